"""SPD sparse solves, deliberately outside the differentiation path.

Because the Ritz energy is stationary in the coefficients at the
discrete solution, callers treat the returned coefficients as
constants; nothing here is ever differentiated.
"""

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .errors import SolverError

RESIDUAL_TOL = 1e-10
SYMMETRY_TOL = 1e-13
DIRECT_DOF_LIMIT = 20_000


@dataclass(frozen=True)
class SolveReport:
    c: np.ndarray
    residual_norm: float
    iterations: int


def solve_spd(system, method: str = "auto") -> SolveReport:
    """Solve B c = ell for an SPD system to relative residual 1e-10.

    method: 'direct-cholesky', 'cg', or 'auto' (direct up to 20k DOFs,
    conjugate gradients above).  CG is Jacobi-preconditioned with a
    relative residual target of 1e-12 and at most 20 * n iterations.
    """
    B, ell = system.B, system.ell
    n = ell.size
    if method == "auto":
        method = "direct-cholesky" if n <= DIRECT_DOF_LIMIT else "cg"
    if method not in ("direct-cholesky", "cg"):
        raise ValueError(f"unknown solve method {method!r}")
    if not np.all(np.isfinite(ell)):
        raise SolverError("load vector contains non-finite entries")
    asym = abs(B - B.T)
    if asym.nnz and asym.max() > SYMMETRY_TOL * max(1.0, abs(B).max()):
        raise SolverError("stiffness matrix is not symmetric")

    ell_norm = np.linalg.norm(ell)
    if ell_norm == 0.0:
        return SolveReport(c=np.zeros(n), residual_norm=0.0, iterations=0)

    if method == "direct-cholesky":
        try:
            lu = spla.splu(B.tocsc())
            c = lu.solve(ell)
        except RuntimeError as exc:
            raise SolverError(f"direct factorization failed: {exc}") from exc
        iterations = 0
    else:
        diag = B.diagonal()
        if np.any(diag <= 0):
            raise SolverError("nonpositive diagonal entry; system is not SPD")
        M = sp.diags(1.0 / diag)
        count = [0]

        def tick(_):
            count[0] += 1

        c, info = spla.cg(B, ell, rtol=1e-12, atol=0.0, maxiter=20 * n, M=M,
                          callback=tick)
        iterations = count[0]
        if info != 0:
            res = np.linalg.norm(B @ c - ell)
            raise SolverError(
                f"conjugate gradients did not converge (info={info})", residual=res
            )

    residual = float(np.linalg.norm(B @ c - ell))
    if not np.isfinite(residual) or residual > RESIDUAL_TOL * ell_norm:
        raise SolverError(
            f"residual {residual:.3e} exceeds {RESIDUAL_TOL:.0e} * |ell|",
            residual=residual,
        )
    return SolveReport(c=c, residual_norm=residual, iterations=iterations)
