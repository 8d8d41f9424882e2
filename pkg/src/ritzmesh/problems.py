"""Benchmark problem definitions.

Five families, each a Poisson-type boundary-value problem on (0,1) or
(0,1)^2 whose mesh is trainable:

    arctan1d       -u'' = f, sharp interior gradient at x = s
    power1d        -u'' = f, u = x^sigma with a derivative blowup at 0
    twomaterial1d  -(sigma(x) u')' = f, piecewise-constant coefficient
    arctan2d       tensor-product arctan fronts on the unit square
    lshape         -div(sigma grad u) = 1 on an L-shape via masking

A ProblemSpec bundles the domain, boundary spec, material field, load,
Neumann data, and the per-axis fixed nodes; factories below fill in the
manufactured data for each family.
"""

from dataclasses import dataclass, replace

import numpy as np

from . import loads as ld
from .assembly import MaterialField, NeumannSpec
from .errors import ConfigurationError
from .mesh import Mesh1D, MeshParams1D, TensorMesh2D, build_mesh_1d, build_tensor_mesh_2d


@dataclass(frozen=True)
class ProblemSpec:
    family: str
    dim: int
    sigma: tuple
    n_elements: int
    boundary: str
    load: ld.LoadSpec
    material: MaterialField
    neumann: NeumannSpec | None = None
    fixed_nodes: tuple = ()          # per-axis tuples in 2D
    domain: tuple = ((0.0, 1.0),)    # per-axis (a, b)

    def __post_init__(self):
        if self.dim not in (1, 2):
            raise ConfigurationError("dim must be 1 or 2")
        fixed = self.fixed_nodes
        if self.dim == 2 and (len(fixed) != 2 or not all(isinstance(f, tuple) for f in fixed)):
            raise ConfigurationError("2D problems need per-axis fixed node tuples")

    def _axis_fixed(self, axis):
        if self.dim == 1:
            return np.asarray(self.fixed_nodes, dtype=float)
        return np.asarray(self.fixed_nodes[axis], dtype=float)

    def n_logits(self, axis=0):
        """Softmax chain length so the axis has exactly n_elements elements."""
        n = self.n_elements - self._axis_fixed(axis).size
        if n < 1:
            raise ConfigurationError("n_elements leaves no adaptive freedom")
        return n

    @property
    def theta_size(self):
        if self.dim == 1:
            return self.n_logits(0)
        return self.n_logits(0) + self.n_logits(1)

    def mesh_params(self, theta=None):
        """MeshParams1D (or an (x, y) pair) from a flat logit vector."""
        if self.dim == 1:
            t = np.zeros(self.n_logits(0)) if theta is None else np.asarray(theta, dtype=float)
            return MeshParams1D(theta=t, fixed_interior=self._axis_fixed(0),
                                interval=self.domain[0])
        nx, ny = self.n_logits(0), self.n_logits(1)
        t = np.zeros(nx + ny) if theta is None else np.asarray(theta, dtype=float)
        if t.size != nx + ny:
            raise ValueError(f"theta has size {t.size}, expected {nx + ny}")
        px = MeshParams1D(theta=t[:nx], fixed_interior=self._axis_fixed(0),
                          interval=self.domain[0])
        py = MeshParams1D(theta=t[nx:], fixed_interior=self._axis_fixed(1),
                          interval=self.domain[1])
        return px, py

    def build_mesh(self, theta=None):
        if self.dim == 1:
            return build_mesh_1d(self.mesh_params(theta))
        return build_tensor_mesh_2d(*self.mesh_params(theta))

    def uniform_mesh(self, n_elements=None):
        """The equispaced reference mesh of the same (or given) size."""
        n = self.n_elements if n_elements is None else n_elements
        axes = []
        for axis in range(self.dim):
            a, b = self.domain[axis if self.dim == 2 else 0]
            nodes = np.linspace(a, b, n + 1)
            for f in self._axis_fixed(axis):
                if np.min(np.abs(nodes - f)) > 1e-12 * (b - a):
                    raise ConfigurationError(
                        f"uniform mesh with {n} elements misses the fixed node at {f}"
                    )
            axes.append(Mesh1D.from_nodes(nodes))
        if self.dim == 1:
            return axes[0]
        return TensorMesh2D(mesh_x=axes[0], mesh_y=axes[1])

    def with_n(self, n_elements):
        return replace(self, n_elements=int(n_elements))


def arctan1d(alpha=10.0, s=0.5, n_elements=32, mode="exact", order=2):
    """Sharp sigmoid front: Dirichlet at 0, manufactured Neumann flux at 1."""
    load = ld.LoadSpec("arctan1d", {"alpha": float(alpha), "s": float(s)},
                       mode=mode, order=order)
    return ProblemSpec(
        family="arctan1d", dim=1, sigma=(float(alpha), float(s)),
        n_elements=int(n_elements), boundary="left", load=load,
        material=MaterialField(),
        neumann=NeumannSpec(endpoint_value=ld.arctan1d_neumann(alpha, s)),
    )


def power1d(sigma=0.7, n_elements=32):
    """u = x^sigma with singular derivative at 0; exact loads mandatory."""
    load = ld.LoadSpec("power", {"sigma": float(sigma)}, mode="exact")
    return ProblemSpec(
        family="power1d", dim=1, sigma=(float(sigma),),
        n_elements=int(n_elements), boundary="left", load=load,
        material=MaterialField(),
        neumann=NeumannSpec(endpoint_value=ld.power_neumann(sigma)),
    )


def twomaterial1d(sigma=10.0, n_elements=32):
    """Transmission problem: coefficient jumps at the fixed node x = 0.5."""
    load = ld.LoadSpec("sine_material", {}, mode="exact")
    return ProblemSpec(
        family="twomaterial1d", dim=1, sigma=(float(sigma),),
        n_elements=int(n_elements), boundary="both", load=load,
        material=MaterialField(regions=(((0.5, 1.0), float(sigma)),)),
        fixed_nodes=(0.5,),
    )


def arctan2d(alpha=10.0, s1=0.05, s2=0.05, n_elements=32, order=50, mode="quadrature"):
    """Tensor-product sigmoid fronts; area and edge loads by quadrature."""
    if mode != "quadrature":
        raise ConfigurationError("arctan2d loads are quadrature-only")
    load = ld.LoadSpec(
        "arctan2d", {"alpha": float(alpha), "s1": float(s1), "s2": float(s2)},
        mode="quadrature", order=order,
    )
    fluxes = ld.arctan2d_edge_fluxes(alpha, s1, s2)
    return ProblemSpec(
        family="arctan2d", dim=2, sigma=(float(alpha), float(s1), float(s2)),
        n_elements=int(n_elements), boundary="left-bottom", load=load,
        material=MaterialField(),
        neumann=NeumannSpec(edge_fluxes=fluxes, edge_order=order),
        fixed_nodes=((), ()),
        domain=((0.0, 1.0), (0.0, 1.0)),
    )


def lshape(sigma1=1.0, sigma2=1.0, n_elements=32):
    """Multi-material L-shape by masking the bottom-right quadrant.

    Fixed lines at x = 0.5 and y = 0.5 keep the re-entrant corner and
    the material interfaces on the mesh.
    """
    load = ld.LoadSpec("constant", {"value": 1.0}, mode="exact")
    material = MaterialField(regions=(
        ((0.0, 0.5, 0.0, 0.5), float(sigma1)),
        ((0.5, 1.0, 0.5, 1.0), float(sigma2)),
    ))
    return ProblemSpec(
        family="lshape", dim=2, sigma=(float(sigma1), float(sigma2)),
        n_elements=int(n_elements), boundary="lshape", load=load,
        material=material,
        fixed_nodes=((0.5,), (0.5,)),
        domain=((0.0, 1.0), (0.0, 1.0)),
    )


def constant1d(value=1.0, n_elements=2):
    """Toy Poisson problem -u'' = value with Dirichlet at 0."""
    load = ld.LoadSpec("constant", {"value": float(value)}, mode="exact")
    return ProblemSpec(
        family="constant1d", dim=1, sigma=(float(value),),
        n_elements=int(n_elements), boundary="left", load=load,
        material=MaterialField(),
    )


FACTORIES = {
    "arctan1d": arctan1d,
    "power1d": power1d,
    "twomaterial1d": twomaterial1d,
    "arctan2d": arctan2d,
    "lshape": lshape,
    "constant1d": constant1d,
}

BENCHMARKS = ("arctan1d", "power1d", "twomaterial1d", "arctan2d", "lshape")


def registry():
    """The five benchmark templates with their standard defaults."""
    return [FACTORIES[name]() for name in BENCHMARKS]


def make_problem(family, sigma=None, n_elements=None, **kwargs):
    """Instantiate a family at a parameter tuple."""
    if family not in FACTORIES:
        raise ConfigurationError(f"unknown problem family {family!r}")
    factory = FACTORIES[family]
    args = list(sigma) if sigma is not None else []
    if n_elements is not None:
        kwargs["n_elements"] = int(n_elements)
    return factory(*args, **kwargs)


def problem_config(problem: ProblemSpec) -> dict:
    """JSON-ready description; make_problem(**problem_config(p)) == p."""
    cfg = {
        "family": problem.family,
        "sigma": list(problem.sigma),
        "n_elements": problem.n_elements,
    }
    if problem.load.mode == "quadrature":
        cfg["mode"] = "quadrature"
        cfg["order"] = problem.load.order
    return cfg


def problem_from_config(cfg: dict) -> ProblemSpec:
    cfg = dict(cfg)
    family = cfg.pop("family")
    sigma = cfg.pop("sigma", None)
    n = cfg.pop("n_elements", None)
    return make_problem(family, sigma=sigma, n_elements=n, **cfg)
