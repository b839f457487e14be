"""Classical representability of pairwise correlations and CHSH values.

A target (biases ``b_j`` and correlations ``E_jk``) is classical when some
probability vector over the ``2**n`` deterministic assignments ``v`` in
``{+1,-1}^n`` reproduces it. Infeasible targets come with a linear
inequality ``c0 + sum c_j v_j + sum c_jk v_j v_k >= 0`` that holds on every
vertex but fails on the target.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import SizeOutOfRange
from .inference import born_single, joint_pi
from .phase_space import DirectionSet, check_index, sign_matrix
from .simplex import FEAS_TOL, phase_one
from .singlet import SingletState, correlation, joint_outcome_distribution
from .states import AmplitudeState, build_isotropic

MAX_AUDIT_N = 16
TARGET_TOL = 1e-7
ENTRY_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class CorrelationTarget:
    n: int
    E: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        E = np.array(self.E, dtype=float)
        b = np.zeros(self.n) if self.b is None else np.array(self.b, dtype=float)
        if E.shape != (self.n, self.n) or b.shape != (self.n,):
            raise SizeOutOfRange(f"target shapes {E.shape}, {b.shape} do not match n={self.n}")
        if not np.allclose(E, E.T, atol=ENTRY_TOL, rtol=0):
            raise ValueError("correlation matrix must be symmetric")
        if not np.allclose(np.diag(E), 1.0, atol=ENTRY_TOL, rtol=0):
            raise ValueError("correlation matrix must have unit diagonal")
        if np.abs(E).max() > 1 + ENTRY_TOL or (b.size and np.abs(b).max() > 1 + ENTRY_TOL):
            raise ValueError("correlations and biases must lie in [-1, 1]")
        object.__setattr__(self, "E", E)
        object.__setattr__(self, "b", b)

    @classmethod
    def from_correlations(cls, E, b=None) -> "CorrelationTarget":
        E = np.asarray(E, dtype=float)
        return cls(len(E), E, b)

    def pairs(self) -> list[tuple[int, int]]:
        return list(itertools.combinations(range(1, self.n + 1), 2))

    def vector(self) -> np.ndarray:
        """``[1, b_1..b_n, E_12, E_13, ...]`` in :func:`constraint_matrix` row order."""
        return np.concatenate([[1.0], self.b, [self.E[j - 1, k - 1] for j, k in self.pairs()]])

    def scaled(self, lam: float) -> "CorrelationTarget":
        off = self.E * lam
        np.fill_diagonal(off, 1.0)
        return CorrelationTarget(self.n, off, self.b * lam)

    def to_dict(self) -> dict:
        return {"n": self.n, "E": self.E.tolist(), "b": self.b.tolist()}


@dataclass(frozen=True, eq=False)
class Certificate:
    coeffs: np.ndarray
    slack: float
    n: int

    def labelled(self) -> dict:
        c = self.coeffs
        pairs = list(itertools.combinations(range(1, self.n + 1), 2))
        return {
            "const": float(c[0]),
            "bias": [float(x) for x in c[1 : self.n + 1]],
            "pair": [[j, k, float(x)] for (j, k), x in zip(pairs, c[self.n + 1 :])],
        }

    def to_dict(self) -> dict:
        return {"coeffs": self.labelled(), "slack": self.slack}


@dataclass(frozen=True, eq=False)
class FeasibilityResult:
    status: str
    target: CorrelationTarget
    witness: Optional[np.ndarray] = None
    certificate: Optional[Certificate] = None
    iterations: int = 0

    @property
    def feasible(self) -> bool:
        return self.status == "feasible"

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "witness": None if self.witness is None else self.witness.tolist(),
            "certificate": None if self.certificate is None else self.certificate.to_dict(),
            "targets": self.target.to_dict(),
        }


def constraint_matrix(n: int) -> np.ndarray:
    """Rows ``[1; v_j; v_j v_k (j<k)]``, one column per vertex in enumeration order."""
    v = sign_matrix(n).astype(float).T
    rows = [np.ones(v.shape[1])]
    rows.extend(v)
    rows.extend(v[j] * v[k] for j, k in itertools.combinations(range(n), 2))
    return np.vstack(rows)


def correlation_matrix(state: AmplitudeState) -> CorrelationTarget:
    """Self-correlations ``E_jk = sum s_j s_k Pi(s_j, s_k)`` and biases of a state."""
    n = state.n
    E = np.eye(n)
    b = np.zeros(n)
    for j in range(1, n + 1):
        p = born_single(state, j)
        b[j - 1] = p[(1,)] - p[(-1,)]
    for j, k in itertools.combinations(range(1, n + 1), 2):
        pi = joint_pi(state, (j, k))
        E[j - 1, k - 1] = E[k - 1, j - 1] = sum(sj * sk * v for (sj, sk), v in pi.values.items())
    return CorrelationTarget(n, E, b)


def classical_feasibility(t: CorrelationTarget) -> FeasibilityResult:
    if not 1 <= t.n <= MAX_AUDIT_N:
        raise SizeOutOfRange(f"feasibility audits need 1 <= n <= {MAX_AUDIT_N}, got {t.n}")
    A = constraint_matrix(t.n)
    target = t.vector()
    res = phase_one(A, target)
    if res.feasible:
        w = res.x
        w = np.where(w < 0, 0.0, w)
        return FeasibilityResult("feasible", t, witness=w, iterations=res.iterations)
    coeffs = -res.farkas
    # make the inequality exactly valid on the vertex set, then scale c0 to 1
    lowest = (coeffs @ A).min()
    if lowest < 0:
        coeffs[0] -= lowest
    if coeffs[0] > 0:
        coeffs = coeffs / coeffs[0]
    coeffs = coeffs + 0.0  # drop negative zeros
    slack = float(coeffs @ target)
    return FeasibilityResult("infeasible", t, certificate=Certificate(coeffs, slack, t.n), iterations=res.iterations)


def audit_isotropic(dirs: DirectionSet) -> FeasibilityResult:
    return classical_feasibility(correlation_matrix(build_isotropic(dirs)))


def witness_errors(result: FeasibilityResult) -> dict:
    """Replay a witness against its target without touching the solver."""
    w = result.witness
    t = result.target
    signs = sign_matrix(t.n).astype(float)
    bias = signs.T @ w
    corr = signs.T @ (w[:, None] * signs)
    return {
        "min_entry": float(w.min()),
        "total": float(w.sum()),
        "bias_error": float(np.abs(bias - t.b).max()),
        "corr_error": float(np.abs(corr - t.E).max()),
    }


def witness_is_valid(result: FeasibilityResult) -> bool:
    err = witness_errors(result)
    return (
        err["min_entry"] >= -FEAS_TOL
        and abs(err["total"] - 1.0) <= 1e-8
        and err["bias_error"] <= TARGET_TOL
        and err["corr_error"] <= TARGET_TOL
    )


def certificate_is_valid(result: FeasibilityResult) -> bool:
    """Exhaustive vertex scan: inequality holds everywhere, fails at the target."""
    cert = result.certificate
    t = result.target
    signs = sign_matrix(t.n).astype(float)
    c = cert.coeffs
    n = t.n
    pairs = list(itertools.combinations(range(n), 2))
    values = c[0] + signs @ c[1 : n + 1]
    for (j, k), cjk in zip(pairs, c[n + 1 :]):
        values = values + cjk * signs[:, j] * signs[:, k]
    at_target = c[0] + c[1 : n + 1] @ t.b + sum(cjk * t.E[j, k] for (j, k), cjk in zip(pairs, c[n + 1 :]))
    return bool(values.min() >= -1e-12 and at_target < -FEAS_TOL)


# -- CHSH -----------------------------------------------------------------


def chsh_value(E, a: int, a2: int, b: int, b2: int) -> float:
    """``E(a,b) - E(a,b') + E(a',b) + E(a',b')`` for a callable or matrix ``E``."""
    if not callable(E):
        mat = np.asarray(E)
        E = lambda x, y: float(mat[x - 1, y - 1])  # noqa: E731
    return E(a, b) - E(a, b2) + E(a2, b) + E(a2, b2)


def chsh(s: SingletState, a: int, a2: int, b: int, b2: int) -> float:
    """CHSH combination of Alice/Bob correlations from the singlet joint law."""
    for j in (a, a2, b, b2):
        check_index(j, s.n)
    return chsh_value(lambda x, y: correlation(joint_outcome_distribution(s, x, y)), a, a2, b, b2)
