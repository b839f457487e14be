"""Anti-correlated two-particle state built from two isotropic states.

The pair lives on the subset where ``s_j^beta = -s_j^alpha`` for every j;
there its amplitude is ``Z0(s^alpha) = -Z0(s^beta)``.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .inference import ProbabilityTable, born_single, joint_pi, sign_tuples
from .phase_space import DirectionSet, check_config, check_index, check_sign, sign_str
from .quaternion import Quaternion
from .states import AmplitudeState, amplitude_at, build_isotropic, negate

RNG_NAME = "numpy.PCG64/SeedSequence"
CHUNK = 1 << 18
THREADS_ENV = "SPIN_EPHASE_THREADS"


@dataclass(frozen=True, eq=False)
class SingletState:
    dirs: DirectionSet
    alpha_state: AmplitudeState

    @property
    def n(self) -> int:
        return self.dirs.n


class PairOutcome(NamedTuple):
    a_index: int
    b_index: int
    s_alpha: int
    s_beta: int


def build_singlet(dirs: DirectionSet) -> SingletState:
    return SingletState(dirs, build_isotropic(dirs))


def on_support(c_alpha: Sequence[int], c_beta: Sequence[int]) -> bool:
    return all(a + b == 0 for a, b in zip(c_alpha, c_beta))


def singlet_amplitude(s: SingletState, c_alpha: Sequence[int], c_beta: Sequence[int]) -> Quaternion:
    c_alpha = check_config(c_alpha, s.n)
    c_beta = check_config(c_beta, s.n)
    if not on_support(c_alpha, c_beta):
        return Quaternion()
    return amplitude_at(s.alpha_state, c_alpha)


def particle_marginal(s: SingletState, which: str = "alpha") -> AmplitudeState:
    """Project onto one particle; each fibre holds a single nonzero term.

    The beta marginal is the isotropic state with every amplitude negated.
    """
    if which == "alpha":
        return s.alpha_state
    if which == "beta":
        return negate(s.alpha_state)
    raise ValueError(f"which must be 'alpha' or 'beta', got {which!r}")


def joint_outcome_distribution(s: SingletState, a: int, b: int) -> ProbabilityTable:
    """``P(s^alpha at a, s^beta at b)``, read off the alpha isotropic state.

    Bob's outcome fixes ``s_b^alpha = -s^beta``, so the law is
    ``Pi0(s_a = s^alpha, s_b = -s^beta)``.
    """
    a = check_index(a, s.n)
    b = check_index(b, s.n)
    if a == b:
        p = born_single(s.alpha_state, a)
        values = {(sa, sb): (p[(sa,)] if sb == -sa else 0.0) for sa, sb in sign_tuples(2)}
    else:
        pi = joint_pi(s.alpha_state, (a, b))
        values = {(sa, sb): pi[(sa, -sb)] for sa, sb in sign_tuples(2)}
    return ProbabilityTable((a, b), values, "P_singlet")


def correlation(table: ProbabilityTable) -> float:
    return float(sum(sa * sb * p for (sa, sb), p in table.values.items()))


def infer_companion(outcome: PairOutcome) -> dict:
    """Values fixed by perfect anti-correlation.

    Returns the alpha value at Bob's direction and the beta value at Alice's.
    """
    return {
        "alpha_at_b": (outcome.b_index, -check_sign(outcome.s_beta)),
        "beta_at_a": (outcome.a_index, -check_sign(outcome.s_alpha)),
    }


# -- sampling -------------------------------------------------------------


@dataclass(frozen=True)
class SampleRun:
    a: int
    b: int
    seed: int
    s_alpha: np.ndarray = field(repr=False)
    s_beta: np.ndarray = field(repr=False)
    naive_hidden: bool = False
    hidden: np.ndarray | None = field(default=None, repr=False)

    @property
    def count(self) -> int:
        return len(self.s_alpha)

    @property
    def cells(self) -> dict:
        out = {}
        for sa, sb in sign_tuples(2):
            out[sign_str((sa, sb))] = int(np.count_nonzero((self.s_alpha == sa) & (self.s_beta == sb)))
        return out

    @property
    def correlation(self) -> float:
        return float(np.mean(self.s_alpha.astype(np.int64) * self.s_beta))

    def outcomes(self) -> list[PairOutcome]:
        return [PairOutcome(self.a, self.b, int(x), int(y)) for x, y in zip(self.s_alpha, self.s_beta)]

    def to_dict(self) -> dict:
        doc = {
            "a": self.a,
            "b": self.b,
            "count": self.count,
            "seed": self.seed,
            "rng": RNG_NAME,
            "cells": self.cells,
            "correlation": self.correlation,
        }
        if self.naive_hidden:
            doc["naive_hidden"] = True
        return doc


def _worker_count() -> int:
    raw = os.environ.get(THREADS_ENV, "0")
    try:
        n = int(raw)
    except ValueError:
        n = 0
    return n if n > 0 else (os.cpu_count() or 1)


def _chunked(count: int, seed: int, draw):
    """Run ``draw(generator, size)`` over fixed-size chunks.

    Chunk boundaries and per-chunk streams depend only on ``(count, seed)``,
    never on the worker count.
    """
    sizes = [CHUNK] * (count // CHUNK)
    if count % CHUNK:
        sizes.append(count % CHUNK)
    children = np.random.SeedSequence(seed).spawn(len(sizes))
    jobs = [(np.random.Generator(np.random.PCG64(ss)), size) for ss, size in zip(children, sizes)]
    workers = min(_worker_count(), len(jobs))
    if workers <= 1:
        parts = [draw(g, size) for g, size in jobs]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda job: draw(*job), jobs))
    return parts


def _cdf(p: np.ndarray) -> np.ndarray:
    cdf = np.cumsum(p)
    cdf /= cdf[-1]
    cdf[-1] = 1.0
    return cdf


def _inverse_cdf(cdf: np.ndarray, u: np.ndarray) -> np.ndarray:
    # side="right" never lands on a zero-width step, so impossible cells stay empty
    return np.searchsorted(cdf, u, side="right")


def _hidden_measure(s: SingletState, a: int, b: int):
    """Classical measure on full alpha configurations.

    The measured pair ``(s_a, s_b)`` follows ``Pi0`` and every other
    direction is independent and uniform.
    """
    pair = joint_pi(s.alpha_state, (a, b)) if a != b else None
    cdf = _cdf(pair.as_array()) if pair is not None else None
    n = s.n

    def draw(g: np.random.Generator, size: int) -> np.ndarray:
        hidden = np.where(g.random((size, n)) < 0.5, 1, -1).astype(np.int8)
        if pair is None:
            return hidden
        idx = _inverse_cdf(cdf, g.random(size))
        tuples = np.array(sign_tuples(2), dtype=np.int8)
        hidden[:, a - 1] = tuples[idx, 0]
        hidden[:, b - 1] = tuples[idx, 1]
        return hidden

    return draw


def sample_outcomes(s: SingletState, a: int, b: int, count: int, seed: int,
                    naive_hidden: bool = False) -> SampleRun:
    """I.i.d. draws of ``(s^alpha at a, s^beta at b)``.

    The default path inverts the CDF of the four-cell joint law. With
    ``naive_hidden`` a full classical configuration is drawn per pair and
    Alice reads ``s_a`` while Bob reads ``-s_b``; the hidden configurations
    are kept on the returned run.
    """
    a = check_index(a, s.n)
    b = check_index(b, s.n)
    count = int(count)
    if count < 1:
        raise ValueError("count must be at least 1")
    seed = int(seed) & 0xFFFFFFFFFFFFFFFF

    if naive_hidden:
        hidden = np.concatenate(_chunked(count, seed, _hidden_measure(s, a, b)))
        return SampleRun(a, b, seed, hidden[:, a - 1].copy(), (-hidden[:, b - 1]).astype(np.int8),
                         naive_hidden=True, hidden=hidden)

    table = joint_outcome_distribution(s, a, b)
    tuples = np.array(sign_tuples(2), dtype=np.int8)
    cdf = _cdf(table.as_array())

    def draw(g: np.random.Generator, size: int) -> np.ndarray:
        return _inverse_cdf(cdf, g.random(size))

    idx = np.concatenate(_chunked(count, seed, draw))
    return SampleRun(a, b, seed, tuples[idx, 0], tuples[idx, 1])


def empirical_table(hidden: np.ndarray, axes: Sequence[int]) -> ProbabilityTable:
    """Relative frequencies of sign tuples over ``axes`` in a hidden-config sample."""
    cols = hidden[:, [j - 1 for j in axes]]
    values = {}
    for t in sign_tuples(len(axes)):
        values[t] = float(np.count_nonzero(np.all(cols == np.array(t), axis=1))) / len(hidden)
    return ProbabilityTable(tuple(axes), values, "empirical")
