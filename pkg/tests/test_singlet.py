import itertools
import math

import numpy as np
import pytest

from conftest import random_dirs
from spin_ephase.errors import IndexOutOfRange, LengthMismatch
from spin_ephase.inference import born_single, consistency_report, joint_pi, sign_tuples
from spin_ephase.phase_space import DirectionSet, directions_from_spherical, enumerate_configs, flip_all
from spin_ephase.quaternion import Quaternion
from spin_ephase.singlet import (
    PairOutcome,
    build_singlet,
    correlation,
    empirical_table,
    infer_companion,
    joint_outcome_distribution,
    particle_marginal,
    sample_outcomes,
    singlet_amplitude,
)
from spin_ephase.states import amplitude_at, build_isotropic


def test_n1_support():
    s = build_singlet(DirectionSet([[0, 0, 1]]))
    nonzero = [(a, b) for a in [(1,), (-1,)] for b in [(1,), (-1,)] if singlet_amplitude(s, a, b) != Quaternion()]
    assert nonzero == [((1,), (-1,)), ((-1,), (1,))]


@pytest.mark.parametrize("n", [1, 2, 4, 6])
def test_support_and_values(n, rng):
    dirs = random_dirs(rng, n)
    s = build_singlet(dirs)
    iso = build_isotropic(dirs)
    configs = list(enumerate_configs(n))
    for ca in configs:
        hits = []
        for cb in configs:
            z = singlet_amplitude(s, ca, cb)
            if any(x == y for x, y in zip(ca, cb)):
                assert z == Quaternion()
            elif z != Quaternion():
                hits.append(cb)
        assert hits == [flip_all(ca)]
        z = singlet_amplitude(s, ca, flip_all(ca))
        assert z == amplitude_at(iso, ca)
        assert z.is_close(-amplitude_at(iso, flip_all(ca)))


@pytest.mark.slow
def test_fibre_triviality_n10(rng):
    dirs = random_dirs(rng, 10)
    table = build_isotropic(dirs).amplitudes()
    # on-support entries: alpha row r pairs with beta row 2**n-1-r and never vanish
    assert np.all(np.any(table != 0, axis=1))
    s = build_singlet(dirs)
    for ca in itertools.islice(enumerate_configs(10), 0, 1024, 97):
        count = sum(singlet_amplitude(s, ca, cb) != Quaternion() for cb in enumerate_configs(10))
        assert count == 1


def test_same_configs_vanish(rng):
    s = build_singlet(random_dirs(rng, 3))
    for c in enumerate_configs(3):
        assert singlet_amplitude(s, c, c) == Quaternion()
    with pytest.raises(LengthMismatch):
        singlet_amplitude(s, (1, 1), (1, 1, 1))


def test_particle_marginals(rng):
    dirs = random_dirs(rng, 4)
    s = build_singlet(dirs)
    iso = build_isotropic(dirs)
    alpha, beta = particle_marginal(s, "alpha"), particle_marginal(s, "beta")
    np.testing.assert_array_equal(alpha.amplitudes(), iso.amplitudes())
    np.testing.assert_array_equal(beta.amplitudes(), -iso.amplitudes())
    for m in (alpha, beta):
        for j in range(1, 5):
            p = born_single(m, j)
            assert p[(1,)] == pytest.approx(0.5) and p[(-1,)] == pytest.approx(0.5)
    with pytest.raises(ValueError):
        particle_marginal(s, "gamma")


def test_beta_marginal_is_projection(rng):
    dirs = random_dirs(rng, 3)
    s = build_singlet(dirs)
    beta = particle_marginal(s, "beta")
    for cb in enumerate_configs(3):
        fibre = Quaternion()
        for ca in enumerate_configs(3):
            fibre = fibre + singlet_amplitude(s, ca, cb)
        assert fibre.is_close(amplitude_at(beta, cb))


def test_joint_same_direction():
    t = joint_outcome_distribution(build_singlet(DirectionSet(np.eye(3))), 2, 2)
    assert t["+-"] == pytest.approx(0.5) and t["-+"] == pytest.approx(0.5)
    assert t["++"] == 0.0 and t["--"] == 0.0


def test_joint_orthogonal():
    t = joint_outcome_distribution(build_singlet(DirectionSet(np.eye(3))), 1, 3)
    assert all(v == pytest.approx(0.25, abs=1e-15) for v in t.values.values())


def test_joint_120_degrees():
    s = build_singlet(directions_from_spherical([(90, 0), (90, 120)]))
    t = joint_outcome_distribution(s, 1, 2)
    assert t["++"] == pytest.approx(3 / 8, abs=1e-12)
    assert t["+-"] == pytest.approx(1 / 8, abs=1e-12)


def test_joint_law_and_uniform_marginals(rng):
    for _ in range(100):
        dirs = random_dirs(rng, 3)
        s = build_singlet(dirs)
        c = dirs.dot(1, 3)
        t = joint_outcome_distribution(s, 1, 3)
        pi = joint_pi(build_isotropic(dirs), (1, 3))
        for sa, sb in sign_tuples(2):
            assert t[(sa, sb)] == pytest.approx((1 - sa * sb * c) / 4, abs=1e-12)
            assert t[(sa, sb)] == pi[(sa, -sb)]
        assert t["++"] + t["+-"] == pytest.approx(0.5, abs=1e-12)
        assert t["++"] + t["-+"] == pytest.approx(0.5, abs=1e-12)
        assert correlation(t) == pytest.approx(-c, abs=1e-12)


def test_joint_index_check():
    with pytest.raises(IndexOutOfRange):
        joint_outcome_distribution(build_singlet(DirectionSet(np.eye(3))), 1, 4)


def test_infer_companion():
    got = infer_companion(PairOutcome(1, 2, -1, 1))
    assert got["alpha_at_b"] == (2, -1)
    assert got["beta_at_a"] == (1, 1)


def test_inferred_pairs_follow_isotropic_pair_law(rng):
    dirs = random_dirs(rng, 2)
    s = build_singlet(dirs)
    run = sample_outcomes(s, 1, 2, 200_000, seed=11)
    inferred_b = -run.s_beta
    pi = joint_pi(build_isotropic(dirs), (1, 2))
    for sa, sb in sign_tuples(2):
        p = pi[(sa, sb)]
        freq = np.mean((run.s_alpha == sa) & (inferred_b == sb))
        assert abs(freq - p) <= 4 * math.sqrt(p * (1 - p) / run.count) + 1e-12


def test_sample_same_direction_never_agrees():
    run = sample_outcomes(build_singlet(DirectionSet(np.eye(3))), 1, 1, 5000, seed=3)
    assert run.cells["++"] == 0 and run.cells["--"] == 0
    assert run.correlation == -1.0


def test_sample_orthogonal_cells_binomial():
    count = 1_000_000
    run = sample_outcomes(build_singlet(DirectionSet(np.eye(3))), 1, 2, count, seed=2026)
    sigma = math.sqrt(0.25 * 0.75 / count)
    for v in run.cells.values():
        assert abs(v / count - 0.25) <= 4 * sigma
    assert sum(run.cells.values()) == count


def test_sample_determinism(rng, monkeypatch):
    s = build_singlet(random_dirs(rng, 3))
    a = sample_outcomes(s, 1, 2, 600_000, seed=99)
    monkeypatch.setenv("SPIN_EPHASE_THREADS", "1")
    b = sample_outcomes(s, 1, 2, 600_000, seed=99)
    np.testing.assert_array_equal(a.s_alpha, b.s_alpha)
    np.testing.assert_array_equal(a.s_beta, b.s_beta)
    c = sample_outcomes(s, 1, 2, 600_000, seed=100)
    assert not np.array_equal(a.s_alpha, c.s_alpha)
    assert a.outcomes()[:3] == b.outcomes()[:3]


def test_sample_document(rng):
    run = sample_outcomes(build_singlet(random_dirs(rng, 2)), 1, 2, 100, seed=5)
    doc = run.to_dict()
    assert set(doc) == {"a", "b", "count", "seed", "rng", "cells", "correlation"}
    assert sum(doc["cells"].values()) == 100
    with pytest.raises(ValueError):
        sample_outcomes(build_singlet(random_dirs(rng, 2)), 1, 2, 0, seed=5)


def test_empirical_correlation_tracks_law(rng):
    dirs = random_dirs(rng, 3)
    count = 1_000_000
    run = sample_outcomes(build_singlet(dirs), 2, 3, count, seed=8)
    e = -dirs.dot(2, 3)
    assert abs(run.correlation - e) <= 4 * math.sqrt((1 - e * e) / count)


def test_naive_hidden_reproduces_pair_but_not_triple(rng):
    dirs = random_dirs(rng, 3)
    count = 400_000
    run = sample_outcomes(build_singlet(dirs), 1, 2, count, seed=21, naive_hidden=True)
    e = -dirs.dot(1, 2)
    assert abs(run.correlation - e) <= 4 * math.sqrt((1 - e * e) / count)
    triple = empirical_table(run.hidden, (1, 2, 3))
    pair = empirical_table(run.hidden, (1, 2))
    summed = triple.marginalize_last()
    assert max(abs(summed[t] - pair[t]) for t in pair.values) <= 1e-12
    quantum = consistency_report(build_isotropic(dirs), (1, 2, 3)).additivity_defect
    assert quantum == pytest.approx(abs(dirs.dot(1, 2)) / 12, abs=1e-10)
