import math

import numpy as np
import pytest
from hypothesis import given, settings

from conftest import quaternions, unit_vectors
from spin_ephase.errors import NonUnitDirection
from spin_ephase.quaternion import (
    I,
    J,
    K,
    ONE,
    PureQuaternion,
    Quaternion,
    check_pure,
    conj_array,
    embed_direction,
    mul_array,
    norm2_array,
    q_add,
    q_conj,
    q_mul,
    q_norm2,
)


def close(a, b, tol=1e-12):
    return all(abs(x - y) <= tol for x, y in zip(a.as_tuple(), b.as_tuple()))


def test_add_identity_and_componentwise():
    assert q_add(Quaternion(1, 0, 0, 0), Quaternion()) == Quaternion(1, 0, 0, 0)
    assert q_add(Quaternion(0, 1, 0, 0), Quaternion(0, 0, 1, 0)) == Quaternion(0, 1, 1, 0)


def test_add_commutes_on_random_pairs(rng):
    for a, b in rng.uniform(-5, 5, (1000, 2, 4)):
        qa, qb = Quaternion.from_array(a), Quaternion.from_array(b)
        assert q_add(qa, qb) == q_add(qb, qa)


@pytest.mark.parametrize(
    "a, b, expected",
    [(I, J, K), (J, K, I), (K, I, J), (J, I, -K), (I, I, -ONE), (J, J, -ONE), (K, K, -ONE)],
)
def test_hamilton_table(a, b, expected):
    assert q_mul(a, b) == expected


def test_multiplicative_identity(rng):
    for a in rng.uniform(-5, 5, (50, 4)):
        q = Quaternion.from_array(a)
        assert q_mul(q, ONE) == q
        assert q_mul(ONE, q) == q


def test_associativity_on_random_triples(rng):
    for a, b, c in rng.uniform(-1, 1, (1000, 3, 4)):
        qa, qb, qc = (Quaternion.from_array(x) for x in (a, b, c))
        assert close(q_mul(q_mul(qa, qb), qc), q_mul(qa, q_mul(qb, qc)))


def test_conj_definition():
    assert q_conj(Quaternion(1, 2, 3, 4)) == Quaternion(1, -2, -3, -4)
    p = PureQuaternion(0, 0.3, -0.2, 0.9)
    assert q_conj(p) == -p


@given(quaternions)
def test_conj_times_self_is_norm(a):
    q = Quaternion(*a)
    prod = q_mul(q_conj(q), q)
    n2 = q_norm2(q)
    assert close(prod, Quaternion(n2), tol=1e-12 * max(1.0, n2))


@given(quaternions, quaternions)
def test_conj_reverses_products(a, b):
    qa, qb = Quaternion(*a), Quaternion(*b)
    assert close(q_conj(q_mul(qa, qb)), q_mul(q_conj(qb), q_conj(qa)), tol=1e-10)
    assert q_conj(q_conj(qa)) == qa


@given(quaternions, quaternions)
def test_norm_is_multiplicative(a, b):
    qa, qb = Quaternion(*a), Quaternion(*b)
    lhs = q_norm2(q_mul(qa, qb))
    rhs = q_norm2(qa) * q_norm2(qb)
    assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-300)


@given(quaternions)
def test_norm_positive_definite(a):
    q = Quaternion(*a)
    assert q_norm2(q) >= 0
    assert (q_norm2(q) == 0) == (q == Quaternion())


def test_norm_fixed_values():
    assert q_norm2(Quaternion()) == 0
    x, y = embed_direction((1, 0, 0)), embed_direction((0, 1, 0))
    assert q_norm2(x) == 1
    assert q_norm2(x + y) == 2


def test_embed_unit_axes():
    assert embed_direction((1, 0, 0)) == I
    assert embed_direction((0, 0, 1)) == K


def test_embed_rejects_non_unit():
    with pytest.raises(NonUnitDirection):
        embed_direction((1.0, 1e-4, 0.0))
    with pytest.raises(NonUnitDirection):
        embed_direction((0.0, 0.0, 0.0))


@settings(max_examples=300)
@given(unit_vectors())
def test_embedded_direction_squares_to_minus_one(n):
    q = embed_direction(n)
    assert close(q_mul(q, q), -ONE)
    assert q_norm2(q) == pytest.approx(1.0, abs=1e-12)


def test_product_relation_axes():
    x, y = embed_direction((1, 0, 0)), embed_direction((0, 1, 0))
    assert q_mul(q_conj(x), y) == Quaternion(0, 0, 0, -1)


@settings(max_examples=300)
@given(unit_vectors(), unit_vectors())
def test_product_relation_dot_minus_cross(n1, n2):
    prod = q_mul(q_conj(embed_direction(n1)), embed_direction(n2))
    cross = np.cross(n1, n2)
    expected = Quaternion(float(np.dot(n1, n2)), *(-cross))
    assert close(prod, expected)


def test_pure_quaternion_check():
    with pytest.raises(ValueError):
        PureQuaternion(1e-6, 1, 0, 0)
    with pytest.raises(ValueError):
        check_pure(Quaternion(0.5, 0, 0, 0))
    assert isinstance(check_pure(Quaternion(0, 1, 2, 3)), PureQuaternion)


def test_signed_sums_of_pure_are_pure(rng):
    vecs = rng.standard_normal((6, 3))
    vecs /= np.linalg.norm(vecs, axis=1, keepdims=True)
    total = Quaternion()
    for s, v in zip(rng.choice([1, -1], 6), vecs):
        total = total + int(s) * embed_direction(v)
    assert total.re == 0.0


def test_array_helpers_match_scalar(rng):
    a = rng.standard_normal((20, 4))
    b = rng.standard_normal((20, 4))
    prod = mul_array(a, b)
    for x, y, p in zip(a, b, prod):
        assert close(q_mul(Quaternion.from_array(x), Quaternion.from_array(y)), Quaternion.from_array(p))
    np.testing.assert_allclose(norm2_array(a), (a**2).sum(axis=1))
    np.testing.assert_array_equal(conj_array(a)[:, 1:], -a[:, 1:])


def test_scalar_multiplication():
    q = Quaternion(1, 2, 3, 4)
    assert 2 * q == Quaternion(2, 4, 6, 8)
    assert q * -1 == -q
    assert math.isclose((q - q).norm2(), 0.0)
