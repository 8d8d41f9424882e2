"""Ritz energy, balanced energy, relative errors, and the reduced gradient.

The energy is evaluated as E = 1/2 (B c) . c - ell . c.  This exact
form matters: its partial derivative in c vanishes at the discrete
solution, which is what lets the mesh gradient skip differentiating the
linear solve.  The algebraically equal forms -1/2 ell . c and
-1/2 (B c) . c are exposed for diagnostics only.
"""

from dataclasses import dataclass, field

import numpy as np

from .assembly import assembly_gradient_contraction
from .errors import InconsistentReferenceError
from .mesh import Mesh1D, mesh_pullback

#: negative radicand larger than this (in energy units) signals inexact
#: integration rather than roundoff
ENERGY_SLACK = 1e-9
RADICAND_CLAMP = 1e-12


def ritz_energy(system, c):
    """1/2 (B c) . c - ell . c, one SpMV and two dot products."""
    Bc = system.B @ c
    return 0.5 * (Bc @ c) - system.ell @ c


def ritz_energy_via_load(system, c):
    """Diagnostic form -1/2 ell . c; equals ritz_energy only at the solution."""
    return -0.5 * (system.ell @ c)


def balanced_ritz(J, J_uniform_ref):
    """Energy normalized by the magnitude of the uniform-mesh energy."""
    if J_uniform_ref == 0.0:
        raise ValueError("uniform reference energy is zero; problem is degenerate")
    return J / abs(J_uniform_ref)


def relative_error(J_candidate, J_exact):
    """sqrt((J_exact - J_candidate) / J_exact) for J_exact < 0.

    Equals the exact-solution-relative energy-norm error of the
    candidate.  A candidate more than 1e-9 below the reference is
    impossible under exact integration and raises; smaller negativity
    is clamped to zero as roundoff.
    """
    if J_exact >= 0:
        raise ValueError("reference Ritz energy must be negative")
    if J_candidate < J_exact - ENERGY_SLACK:
        raise InconsistentReferenceError(
            f"candidate energy {J_candidate!r} lies below the reference "
            f"{J_exact!r}; the load integration is inconsistent"
        )
    radicand = (J_exact - J_candidate) / J_exact
    if radicand < 0.0:
        radicand = 0.0
    return float(np.sqrt(radicand))


@dataclass
class ErrorReport:
    """Per-parameter relative errors with mean/max aggregates."""

    adaptive: dict = field(default_factory=dict)
    uniform: dict = field(default_factory=dict)

    def aggregate(self, keys=None):
        keys = list(self.adaptive if keys is None else keys)
        ad = np.array([self.adaptive[k] for k in keys])
        un = np.array([self.uniform[k] for k in keys])
        return {
            "mean_adaptive": float(ad.mean()),
            "max_adaptive": float(ad.max()),
            "mean_uniform": float(un.mean()),
            "max_uniform": float(un.max()),
        }


def ritz_gradient(problem, mesh, labeling, c_free, scale=1.0):
    """Reduced gradient of the (optionally balanced) Ritz energy.

    Contracts the closed-form element derivatives with the solved
    coefficients, then pulls the node-coordinate gradient back through
    the mesh construction to the logits.  For a balanced loss, pass
    scale = 1/|J_uniform_ref|.  Returns the gradient over the logits
    (theta in the direct mode, the network output in parametric mode);
    in 2D the x-axis block precedes the y-axis block.
    """
    grad_nodes = assembly_gradient_contraction(
        mesh, labeling, problem.material, problem.load, c_free,
        neumann=problem.neumann,
    )
    if isinstance(mesh, Mesh1D):
        g = mesh_pullback(grad_nodes, mesh.record, problem.mesh_params(None))
        return scale * g
    params_x, params_y = problem.mesh_params(None)
    gx, gy = grad_nodes
    gtx = mesh_pullback(gx, mesh.mesh_x.record, params_x)
    gty = mesh_pullback(gy, mesh.mesh_y.record, params_y)
    return scale * np.concatenate([gtx, gty])
