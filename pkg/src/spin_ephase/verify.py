"""Closed-form versus exhaustive-sum equivalence sweep."""
from __future__ import annotations

import itertools

import numpy as np

from .inference import born_single, joint_pi, marginal_amplitude, sign_tuples
from .phase_space import random_directions
from .states import build_eigenstate, build_isotropic

SWEEP_TOL = 1e-10


def _max_abs(a, b) -> float:
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))


def compare_state(state, max_order: int = 3) -> tuple[int, float]:
    """Compare every marginal amplitude and Born table up to ``max_order`` axes.

    Returns ``(checks, worst error)``.
    """
    checks = 0
    worst = 0.0
    n = state.n
    for order in range(1, min(max_order, n) + 1):
        for axes in itertools.combinations(range(1, n + 1), order):
            for t in sign_tuples(order):
                a = dict(zip(axes, t))
                closed = marginal_amplitude(state, a, "closed").to_array()
                brute = marginal_amplitude(state, a, "brute").to_array()
                # marginals scale like 2**(n - order); compare relative to that
                worst = max(worst, _max_abs(closed, brute) / 2.0 ** (n - order))
                checks += 1
            closed_p = joint_pi(state, axes, "closed").as_array()
            brute_p = joint_pi(state, axes, "brute").as_array()
            worst = max(worst, _max_abs(closed_p, brute_p))
            checks += 1
    return checks, worst


def equivalence_sweep(max_n: int = 10, sets_per_n: int = 2, seed: int = 0, max_order: int = 3) -> dict:
    rng = np.random.default_rng(seed)
    checks = 0
    worst = 0.0
    for n in range(1, max_n + 1):
        for _ in range(sets_per_n):
            dirs = random_directions(n, rng)
            j = int(rng.integers(1, n + 1))
            sigma = int(rng.choice([1, -1]))
            for state in (build_isotropic(dirs), build_eigenstate(dirs, j, sigma)):
                c, w = compare_state(state, max_order)
                checks += c
                worst = max(worst, w)
            p = born_single(build_isotropic(dirs), 1, "brute").as_array()
            worst = max(worst, _max_abs(p, [0.5, 0.5]))
            checks += 1
    return {
        "kind": "selftest",
        "max_n": max_n,
        "sets_per_n": sets_per_n,
        "seed": seed,
        "checks": checks,
        "max_error": worst,
        "tolerance": SWEEP_TOL,
        "passed": worst <= SWEEP_TOL,
    }
