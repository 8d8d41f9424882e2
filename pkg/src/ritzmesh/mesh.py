"""Trainable mesh parameterization.

A 1D mesh on an interval (a, b) is realized from unconstrained logits
``theta`` of length n: a softmax turns the logits into a partition of
unity ``delta``, the partial sums of ``delta`` place n+1 chain nodes
from a to b, and any fixed interior nodes (material interfaces, corner
lines) are merged in by sorting.  The construction is recorded so that
gradients with respect to the sorted node coordinates can be pulled
back to gradients with respect to the logits.

2D meshes are tensor products of two independently parameterized 1D
meshes.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateMeshError

# Elements shorter than EPS_MIN_FACTOR * (b - a) make the stiffness
# matrix numerically singular, so mesh construction rejects them.  The
# floor sits near roundoff because optimally graded meshes for the
# singular benchmarks legitimately carry first elements down to
# ~1e-13 * (b - a) at N = 256.
EPS_MIN_FACTOR = 1e-14


@dataclass(frozen=True)
class MeshParams1D:
    """Logits plus fixed interior nodes for one axis.

    theta:          unconstrained logits, length n >= 1
    fixed_interior: sorted node coordinates strictly inside (a, b)
    interval:       (a, b) with a < b
    """

    theta: np.ndarray
    fixed_interior: np.ndarray = field(default_factory=lambda: np.empty(0))
    interval: tuple = (0.0, 1.0)

    def __post_init__(self):
        theta = np.asarray(self.theta, dtype=float)
        fixed = np.asarray(self.fixed_interior, dtype=float)
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "fixed_interior", fixed)
        a, b = self.interval
        if not a < b:
            raise ValueError(f"interval must satisfy a < b, got ({a}, {b})")
        if theta.ndim != 1 or theta.size < 1:
            raise ValueError("theta must be a vector of length >= 1")
        if not np.all(np.isfinite(theta)):
            raise ValueError("theta contains non-finite entries")
        if fixed.size:
            if np.any(fixed <= a) or np.any(fixed >= b):
                raise ValueError("fixed interior nodes must lie strictly inside (a, b)")
            if np.any(np.diff(fixed) <= 0):
                raise ValueError("fixed interior nodes must be strictly increasing")

    @property
    def n(self):
        return self.theta.size


@dataclass(frozen=True)
class ConstructionRecord:
    """How a Mesh1D was built, for gradient pullback.

    order:      argsort permutation; sorted_nodes = unsorted[order]
    n_adaptive: number of logits n (chain nodes are unsorted[0..n])
    adaptive:   per sorted node, True if it came from the softmax chain
    delta:      the partition-of-unity vector used
    """

    order: np.ndarray
    n_adaptive: int
    adaptive: np.ndarray
    delta: np.ndarray


@dataclass(frozen=True)
class Mesh1D:
    """Strictly increasing nodes from a to b, with optional record."""

    nodes: np.ndarray
    record: ConstructionRecord | None = None

    @property
    def n_elements(self):
        return self.nodes.size - 1

    @property
    def lengths(self):
        return np.diff(self.nodes)

    @classmethod
    def from_nodes(cls, nodes):
        """Wrap explicit node coordinates (no pullback possible)."""
        nodes = np.asarray(nodes, dtype=float)
        if nodes.ndim != 1 or nodes.size < 2:
            raise ValueError("need at least two nodes")
        _check_lengths(nodes, nodes[-1] - nodes[0])
        return cls(nodes=nodes, record=None)


@dataclass(frozen=True)
class TensorMesh2D:
    """Tensor product of two 1D meshes; elements are axis-aligned rectangles."""

    mesh_x: Mesh1D
    mesh_y: Mesh1D

    @property
    def n_nodes(self):
        return self.mesh_x.nodes.size * self.mesh_y.nodes.size

    @property
    def n_elements(self):
        return self.mesh_x.n_elements * self.mesh_y.n_elements


def softmax_partition(theta):
    """Partition of unity from logits, with max-subtraction for overflow safety.

    Every entry lies in (0, 1) and the entries sum to 1.
    """
    theta = np.asarray(theta, dtype=float)
    if theta.ndim != 1 or theta.size < 1:
        raise ValueError("theta must be a vector of length >= 1")
    if not np.all(np.isfinite(theta)):
        raise ValueError("theta contains non-finite entries")
    shifted = theta - theta.max()
    e = np.exp(shifted)
    return e / e.sum()


def build_mesh_1d(params: MeshParams1D) -> Mesh1D:
    """Realize logits (plus fixed interior nodes) as a sorted mesh.

    Chain nodes: x_0 = a, x_i = x_{i-1} + (b - a) * delta_i; the last
    chain node is assigned b exactly rather than by summation.  Fixed
    nodes are merged and the union sorted.  Raises DegenerateMeshError
    if any resulting element is shorter than EPS_MIN_FACTOR * (b - a),
    which also covers sort ties (the gradient is undefined there).
    """
    a, b = params.interval
    delta = softmax_partition(params.theta)
    n = delta.size
    chain = np.empty(n + 1)
    chain[0] = a
    chain[1:] = a + (b - a) * np.cumsum(delta)
    chain[n] = b
    unsorted = np.concatenate([chain, params.fixed_interior])
    order = np.argsort(unsorted, kind="stable")
    nodes = unsorted[order]
    _check_lengths(nodes, b - a)
    adaptive = order <= n
    record = ConstructionRecord(order=order, n_adaptive=n, adaptive=adaptive, delta=delta)
    return Mesh1D(nodes=nodes, record=record)


def build_tensor_mesh_2d(params_x: MeshParams1D, params_y: MeshParams1D) -> TensorMesh2D:
    return TensorMesh2D(mesh_x=build_mesh_1d(params_x), mesh_y=build_mesh_1d(params_y))


def mesh_pullback(grad_nodes, record: ConstructionRecord, params: MeshParams1D):
    """Pull a gradient over sorted node coordinates back to the logits.

    Applies, in reverse construction order: the transpose of the sort
    permutation, zeroing of fixed and endpoint contributions, the
    adjoint of the cumulative sum (suffix sums over chain nodes
    1..n-1; the last chain node is pinned to b), the (b - a) scale,
    and the softmax Jacobian d(delta_i)/d(theta_j) =
    delta_i (1{i=j} - delta_j).
    """
    grad_nodes = np.asarray(grad_nodes, dtype=float)
    if grad_nodes.shape != record.order.shape:
        raise ValueError(
            f"grad_nodes has length {grad_nodes.size}, expected {record.order.size}"
        )
    a, b = params.interval
    n = record.n_adaptive
    grad_unsorted = np.empty_like(grad_nodes)
    grad_unsorted[record.order] = grad_nodes
    # Interior chain nodes x_1..x_{n-1}; x_0 = a and x_n = b carry no
    # theta dependence, fixed nodes none either.
    g_chain = grad_unsorted[1:n]
    # delta_i moves x_i..x_{n-1}, so its adjoint is a suffix sum.
    grad_delta = np.zeros(n)
    grad_delta[: n - 1] = (b - a) * np.cumsum(g_chain[::-1])[::-1]
    delta = record.delta
    return delta * (grad_delta - grad_delta @ delta)


def _check_lengths(nodes, span):
    lengths = np.diff(nodes)
    eps_min = EPS_MIN_FACTOR * span
    bad = np.flatnonzero(lengths < eps_min)
    if bad.size:
        e = int(bad[0])
        raise DegenerateMeshError(
            f"element {e} spanning [{float(nodes[e])}, {float(nodes[e + 1])}] has "
            f"length {lengths[e]:.3e} < {eps_min:.3e}"
        )
