"""Marginal amplitudes, Born-rule probabilities and interference bookkeeping."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

import numpy as np

from .errors import DegenerateState, DuplicateAxis, ZeroConditioningEvent
from .phase_space import (
    check_assignment,
    check_axes,
    check_index,
    check_sign,
    matching_mask,
    sign_str,
)
from .quaternion import Quaternion, check_pure, q_conj, q_mul, q_norm2
from .states import DENSE, EIGENSTATE, AmplitudeState

CONSISTENCY_TOL = 1e-10


def sign_tuples(k: int):
    return list(itertools.product((1, -1), repeat=k))


@dataclass(frozen=True)
class ProbabilityTable:
    """Probabilities over sign tuples for ``axes`` (1-based direction indices).

    ``kind`` names the distribution (``"P"``, ``"Pi"``, ``"Pi_cond"``,
    ``"Pi_seq"``, ``"P_singlet"``); ``given`` holds the conditioning event of
    a conditional table.
    """

    axes: tuple[int, ...]
    values: dict
    kind: str = "Pi"
    given: Optional[dict] = None

    def __getitem__(self, signs) -> float:
        if isinstance(signs, str):
            signs = tuple(1 if ch == "+" else -1 for ch in signs)
        elif isinstance(signs, int):
            signs = (signs,)
        return self.values[tuple(signs)]

    def total(self) -> float:
        return float(sum(self.values.values()))

    def as_array(self) -> np.ndarray:
        """Values in enumeration order of the sign tuples."""
        return np.array([self.values[t] for t in sign_tuples(len(self.axes))])

    def marginalize_last(self) -> dict:
        """Sum out the last axis: map from shorter sign tuples to probabilities."""
        out: dict = {}
        for t, p in self.values.items():
            out[t[:-1]] = out.get(t[:-1], 0.0) + p
        return out

    def to_dict(self) -> dict:
        doc = {
            "kind": self.kind,
            "axes": list(self.axes),
            "values": {sign_str(t): float(p) for t, p in self.values.items()},
        }
        if self.given is not None:
            doc["given"] = {str(j): sign_str((s,)) for j, s in self.given.items()}
        return doc

    def csv_rows(self) -> list[list]:
        header = [f"s{j}" for j in self.axes] + ["probability"]
        rows = [header]
        for t, p in self.values.items():
            rows.append([sign_str((s,)) for s in t] + [repr(float(p))])
        return rows


@dataclass(frozen=True)
class InterferenceReport:
    direct: float
    cross: float
    total: float
    axes: tuple[int, int] = (0, 0)
    given_sign: int = 1

    def to_dict(self) -> dict:
        j, k = self.axes
        return {
            "kind": "interference",
            "j": j,
            "sign_j": sign_str((self.given_sign,)),
            "k": k,
            "direct": self.direct,
            "cross": self.cross,
            "total": self.total,
        }


@dataclass(frozen=True)
class ConsistencyReport:
    axes: tuple[int, ...]
    additivity_defect: float
    order_defect_forward: float
    order_defect_reverse: float
    tol: float = CONSISTENCY_TOL
    details: dict = field(default_factory=dict, compare=False)

    @property
    def additivity_consistent(self) -> bool:
        return self.additivity_defect < self.tol

    @property
    def order_consistent(self) -> bool:
        return max(self.order_defect_forward, self.order_defect_reverse) < self.tol

    @property
    def consistent(self) -> bool:
        return self.additivity_consistent and self.order_consistent

    def to_dict(self) -> dict:
        return {
            "kind": "consistency",
            "axes": list(self.axes),
            "additivity_defect": self.additivity_defect,
            "additivity_consistent": self.additivity_consistent,
            "order_defect_forward": self.order_defect_forward,
            "order_defect_reverse": self.order_defect_reverse,
            "order_consistent": self.order_consistent,
            "consistent": self.consistent,
            "tolerance": self.tol,
        }


# -- marginal amplitudes --------------------------------------------------


def _marginal_closed(state: AmplitudeState, a: dict) -> Quaternion:
    n = state.n
    free = n - len(a)
    fixed = dict(a)
    if state.kind == EIGENSTATE:
        j, sigma = state.index, state.sign
        if j in fixed:
            if fixed[j] != sigma:
                return Quaternion()
        else:
            # s_j is pinned by the support but still summed over nothing else
            fixed[j] = sigma
            free -= 1
    vec = np.zeros(3)
    for idx, s in fixed.items():
        vec = vec + s * state.dirs.vectors[idx - 1]
    scale = state.global_sign * 2.0**free
    return Quaternion(0.0, *(scale * vec))


def _marginal_brute(state: AmplitudeState, a: dict) -> Quaternion:
    table = state.amplitudes()
    return Quaternion.from_array(table[matching_mask(state.n, a)].sum(axis=0))


def marginal_amplitude(state: AmplitudeState, a: Mapping[int, int], method: str = "auto") -> Quaternion:
    """Sum of ``Z`` over every configuration agreeing with the sub-assignment ``a``.

    ``method`` is ``"closed"`` (canonical kinds only), ``"brute"`` (exhaustive
    sum over the table) or ``"auto"``.
    """
    a = check_assignment(a, state.n)
    if method == "auto":
        method = "brute" if state.kind == DENSE else "closed"
    if method == "closed":
        if state.kind == DENSE:
            raise ValueError("dense states have no closed-form marginals")
        z = _marginal_closed(state, a)
    elif method == "brute":
        z = _marginal_brute(state, a)
    else:
        raise ValueError(f"unknown method {method!r}")
    return check_pure(z)


def marginal_amplitudes(state: AmplitudeState, axes: Sequence[int], method: str = "auto") -> dict:
    """Marginal amplitude for every sign tuple over ``axes``."""
    axes = check_axes(axes, state.n)
    return {t: marginal_amplitude(state, dict(zip(axes, t)), method) for t in sign_tuples(len(axes))}


# -- Born rule ------------------------------------------------------------


def _normalized(axes, weights: dict, kind: str) -> ProbabilityTable:
    total = sum(weights.values())
    if total <= 0.0:
        raise DegenerateState(f"all marginal amplitudes over axes {list(axes)} vanish")
    return ProbabilityTable(tuple(axes), {t: w / total for t, w in weights.items()}, kind)


def born_single(state: AmplitudeState, j: int, method: str = "auto") -> ProbabilityTable:
    j = check_index(j, state.n)
    amps = marginal_amplitudes(state, (j,), method)
    return _normalized((j,), {t: q_norm2(z) for t, z in amps.items()}, "P")


def joint_pi(state: AmplitudeState, axes: Sequence[int], method: str = "auto") -> ProbabilityTable:
    """Born rule applied to the joint marginal amplitudes over ``axes``."""
    axes = check_axes(axes, state.n)
    amps = marginal_amplitudes(state, axes, method)
    return _normalized(axes, {t: q_norm2(z) for t, z in amps.items()}, "Pi" if len(axes) > 1 else "P")


def conditional_pi(state: AmplitudeState, k: int, j: int, sigma_j, method: str = "auto") -> ProbabilityTable:
    """``Pi(s_k | s_j = sigma_j)`` from the pair marginals."""
    k = check_index(k, state.n)
    j = check_index(j, state.n)
    if j == k:
        raise DuplicateAxis("conditioning direction must differ from the target direction")
    sigma_j = check_sign(sigma_j)
    w = {(sk,): q_norm2(marginal_amplitude(state, {j: sigma_j, k: sk}, method)) for sk in (1, -1)}
    total = w[(1,)] + w[(-1,)]
    if total <= 0.0:
        raise ZeroConditioningEvent(f"conditioning event s_{j}={sign_str((sigma_j,))} has zero weight")
    return ProbabilityTable((k,), {t: v / total for t, v in w.items()}, "Pi_cond", {j: sigma_j})


def sequential_pi(state: AmplitudeState, j: int, k: int, method: str = "auto") -> ProbabilityTable:
    """``Pi(s_j; s_k) = P(s_j) Pi(s_k | s_j)`` over axes ``(j, k)``.

    Rows whose first-direction probability is zero are set to zero even where
    the conditional is undefined.
    """
    j = check_index(j, state.n)
    k = check_index(k, state.n)
    if j == k:
        raise DuplicateAxis("sequential distribution needs two distinct directions")
    p = born_single(state, j, method)
    values = {}
    for sj in (1, -1):
        if p[(sj,)] == 0.0:
            values[(sj, 1)] = values[(sj, -1)] = 0.0
            continue
        try:
            cond = conditional_pi(state, k, j, sj, method)
        except ZeroConditioningEvent:
            values[(sj, 1)] = values[(sj, -1)] = 0.0
            continue
        for sk in (1, -1):
            values[(sj, sk)] = p[(sj,)] * cond[(sk,)]
    return ProbabilityTable((j, k), values, "Pi_seq")


def interference_decomposition(state: AmplitudeState, j: int, sigma_j, k: int, method: str = "auto") -> InterferenceReport:
    """Split ``|Z(s_j,+_k) + Z(s_j,-_k)|^2`` into direct and cross terms."""
    j = check_index(j, state.n)
    k = check_index(k, state.n)
    if j == k:
        raise DuplicateAxis("interference needs two distinct directions")
    sigma_j = check_sign(sigma_j)
    zp = marginal_amplitude(state, {j: sigma_j, k: 1}, method)
    zm = marginal_amplitude(state, {j: sigma_j, k: -1}, method)
    direct = q_norm2(zp) + q_norm2(zm)
    cross = 2.0 * q_mul(q_conj(zp), zm).re
    total = q_norm2(zp + zm)
    return InterferenceReport(direct, cross, total, (j, k), sigma_j)


def consistency_report(state: AmplitudeState, axes: Sequence[int], method: str = "auto",
                       tol: float = CONSISTENCY_TOL) -> ConsistencyReport:
    """Additivity and measurement-order defects of the formal distributions.

    Additivity compares ``sum over the last axis of Pi(axes)`` with
    ``Pi(axes[:-1])``. Order defects compare ``Pi(s_j; s_k)`` and
    ``Pi(s_k; s_j)`` with ``Pi(s_j, s_k)`` for every pair ``j < k`` in ``axes``
    and keep the maxima.
    """
    axes = check_axes(axes, state.n)
    if len(axes) < 2:
        raise DuplicateAxis("consistency needs at least two axes")
    full = joint_pi(state, axes, method)
    reduced = joint_pi(state, axes[:-1], method)
    summed = full.marginalize_last()
    additivity = max(abs(summed[t] - reduced.values[t]) for t in reduced.values)

    forward = reverse = 0.0
    for a_pos, b_pos in itertools.combinations(range(len(axes)), 2):
        j, k = axes[a_pos], axes[b_pos]
        pair = joint_pi(state, (j, k), method)
        seq_jk = sequential_pi(state, j, k, method)
        seq_kj = sequential_pi(state, k, j, method)
        for sj, sk in sign_tuples(2):
            forward = max(forward, abs(seq_jk.values[(sj, sk)] - pair.values[(sj, sk)]))
            reverse = max(reverse, abs(seq_kj.values[(sk, sj)] - pair.values[(sj, sk)]))
    return ConsistencyReport(axes, float(additivity), float(forward), float(reverse), tol,
                             {"joint": full, "reduced": reduced})
