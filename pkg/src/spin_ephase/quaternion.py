"""Quaternion algebra for spin amplitudes.

Scalar values use the immutable :class:`Quaternion`; dense amplitude tables
are ``(..., 4)`` float arrays laid out as ``(re, i, j, k)`` and handled by the
``*_array`` helpers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NonUnitDirection

ATOL = 1e-12
UNIT_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class Quaternion:
    re: float = 0.0
    i: float = 0.0
    j: float = 0.0
    k: float = 0.0

    def __post_init__(self):
        for name in ("re", "i", "j", "k"):
            object.__setattr__(self, name, float(getattr(self, name)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Quaternion):
            return NotImplemented
        return self.as_tuple() == other.as_tuple()

    def __hash__(self) -> int:
        return hash(self.as_tuple())

    @classmethod
    def from_array(cls, a) -> "Quaternion":
        re, i, j, k = (float(x) for x in a)
        return cls(re, i, j, k)

    def to_array(self) -> np.ndarray:
        return np.array([self.re, self.i, self.j, self.k], dtype=float)

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.re, self.i, self.j, self.k)

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.i, self.j, self.k], dtype=float)

    def __add__(self, other: "Quaternion") -> "Quaternion":
        return q_add(self, other)

    def __sub__(self, other: "Quaternion") -> "Quaternion":
        return q_add(self, -other)

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.re, -self.i, -self.j, -self.k)

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            return q_mul(self, other)
        if isinstance(other, (int, float, np.floating, np.integer)):
            s = float(other)
            return Quaternion(self.re * s, self.i * s, self.j * s, self.k * s)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float, np.floating, np.integer)):
            return self * other
        return NotImplemented

    def conj(self) -> "Quaternion":
        return q_conj(self)

    def norm2(self) -> float:
        return q_norm2(self)

    def is_close(self, other: "Quaternion", atol: float = ATOL) -> bool:
        return all(abs(a - b) <= atol for a, b in zip(self.as_tuple(), other.as_tuple()))

    def is_zero(self, atol: float = ATOL) -> bool:
        return self.norm2() <= atol * atol


class PureQuaternion(Quaternion):
    """A :class:`Quaternion` checked to have zero real part.

    Same representation as its parent; construction fails if ``|re| > 1e-12``.
    """

    def __post_init__(self):
        super().__post_init__()
        if abs(self.re) > ATOL:
            raise ValueError(f"real part {self.re!r} is not zero; not a pure quaternion")


ZERO = Quaternion()
ONE = Quaternion(1.0)
I = PureQuaternion(0.0, 1.0, 0.0, 0.0)
J = PureQuaternion(0.0, 0.0, 1.0, 0.0)
K = PureQuaternion(0.0, 0.0, 0.0, 1.0)


def q_add(a: Quaternion, b: Quaternion) -> Quaternion:
    return Quaternion(a.re + b.re, a.i + b.i, a.j + b.j, a.k + b.k)


def q_mul(a: Quaternion, b: Quaternion) -> Quaternion:
    """Hamilton product ``a * b`` (ij = k, jk = i, ki = j)."""
    return Quaternion(
        a.re * b.re - a.i * b.i - a.j * b.j - a.k * b.k,
        a.re * b.i + a.i * b.re + a.j * b.k - a.k * b.j,
        a.re * b.j - a.i * b.k + a.j * b.re + a.k * b.i,
        a.re * b.k + a.i * b.j - a.j * b.i + a.k * b.re,
    )


def q_conj(a: Quaternion) -> Quaternion:
    return Quaternion(a.re, -a.i, -a.j, -a.k)


def q_norm2(a: Quaternion) -> float:
    return a.re * a.re + a.i * a.i + a.j * a.j + a.k * a.k


def check_pure(q: Quaternion, atol: float = ATOL) -> PureQuaternion:
    """Return ``q`` as a :class:`PureQuaternion`, raising if its real part is nonzero."""
    if isinstance(q, PureQuaternion):
        return q
    if abs(q.re) > atol:
        raise ValueError(f"real part {q.re!r} is not zero; not a pure quaternion")
    return PureQuaternion(0.0, q.i, q.j, q.k)


def embed_direction(n) -> PureQuaternion:
    """Map a unit 3-vector to the pure quaternion ``n_x I + n_y J + n_z K``."""
    x, y, z = (float(c) for c in n)
    norm = math.sqrt(x * x + y * y + z * z)
    if not abs(norm - 1.0) <= UNIT_TOL:
        raise NonUnitDirection(f"direction ({x}, {y}, {z}) has norm {norm!r}, expected 1")
    return PureQuaternion(0.0, x, y, z)


# -- array helpers --------------------------------------------------------


def mul_array(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Broadcasting Hamilton product of ``(..., 4)`` arrays."""
    a0, a1, a2, a3 = np.moveaxis(np.asarray(a, dtype=float), -1, 0)
    b0, b1, b2, b3 = np.moveaxis(np.asarray(b, dtype=float), -1, 0)
    return np.stack(
        [
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        ],
        axis=-1,
    )


def conj_array(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=float, copy=True)
    out[..., 1:] *= -1.0
    return out


def norm2_array(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    return np.einsum("...c,...c->...", a, a)
