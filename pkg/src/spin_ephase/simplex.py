"""Dense revised simplex for linear feasibility ``A x = b, x >= 0``.

Only Phase I is needed: artificial variables are driven to zero. Pricing is
``"bland"`` (lowest-index entering column, lowest-index leaving variable on
ratio ties) or ``"hybrid"``: most-negative reduced cost, dropping to Bland's
rule after a run of degenerate pivots and back after the next improving one.
Either way the method terminates on degenerate problems.
When the artificial sum stays positive, the final simplex multipliers form
a Farkas certificate ``y`` with ``y @ A <= 0`` and ``y @ b > 0``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

FEAS_TOL = 1e-9
REFACTOR_EVERY = 32
STALL_LIMIT = 20


@dataclass
class PhaseOneResult:
    feasible: bool
    x: Optional[np.ndarray]
    farkas: Optional[np.ndarray]
    residual: float
    iterations: int


def phase_one(A: np.ndarray, b: np.ndarray, tol: float = FEAS_TOL, max_iter: Optional[int] = None,
              rule: str = "hybrid") -> PhaseOneResult:
    if rule not in ("bland", "hybrid"):
        raise ValueError(f"unknown pricing rule {rule!r}")
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    m, nv = A.shape
    flip = np.where(b < 0, -1.0, 1.0)
    Af = A * flip[:, None]
    bf = b * flip
    M = np.hstack([Af, np.eye(m)])
    cost = np.concatenate([np.zeros(nv), np.ones(m)])
    basis = np.arange(nv, nv + m)
    binv = np.eye(m)
    xb = bf.copy()
    if max_iter is None:
        max_iter = 50 * (m + nv)

    it = 0
    stalled = 0
    while True:
        y = cost[basis] @ binv
        reduced = cost - y @ M
        reduced[basis] = 0.0
        candidates = np.flatnonzero(reduced < -tol)
        if candidates.size == 0:
            break
        if it >= max_iter:
            raise RuntimeError(f"simplex did not converge in {max_iter} iterations")
        if rule == "bland" or stalled >= STALL_LIMIT:
            e = int(candidates[0])
        else:
            e = int(candidates[np.argmin(reduced[candidates])])
        d = binv @ M[:, e]
        rows = np.flatnonzero(d > tol)
        if rows.size == 0:
            # Phase I objective is bounded below by zero
            raise RuntimeError("unbounded direction in phase I; numerical breakdown")
        ratios = xb[rows] / d[rows]
        best = ratios.min()
        ties = rows[ratios <= best + 1e-12]
        leave = int(ties[np.argmin(basis[ties])])

        stalled = stalled + 1 if best <= tol else 0
        piv = d[leave]
        xb = xb - (xb[leave] / piv) * d
        xb[leave] = best if best > 0 else 0.0
        row = binv[leave] / piv
        binv = binv - np.outer(d, row)
        binv[leave] = row
        basis[leave] = e
        it += 1
        if it % REFACTOR_EVERY == 0:
            binv = np.linalg.inv(M[:, basis])
            xb = binv @ bf
        np.maximum(xb, 0.0, out=xb)

    residual = float(cost[basis] @ xb)
    if residual <= tol:
        x = np.zeros(nv)
        structural = basis < nv
        x[basis[structural]] = xb[structural]
        x = _polish(A, b, x, basis[structural])
        return PhaseOneResult(True, x, None, residual, it)
    y = cost[basis] @ binv
    return PhaseOneResult(False, None, flip * y, residual, it)


def _polish(A, b, x, cols):
    """Re-solve the basic system against the original data; keep the better point."""
    if cols.size == 0:
        return x
    sol, *_ = np.linalg.lstsq(A[:, cols], b, rcond=None)
    if sol.min() < -FEAS_TOL:
        return x
    cand = np.zeros_like(x)
    cand[cols] = np.maximum(sol, 0.0)
    if np.abs(A @ cand - b).max() <= np.abs(A @ x - b).max():
        return cand
    return x
