"""Directions, sign configurations and enumeration of ``{+1, -1}^N``.

Configurations are tuples of ``+1``/``-1`` ints. Enumeration order is
lexicographic with ``+`` before ``-``: configuration number ``r`` has
``s_j = -1`` exactly when bit ``N - j`` of ``r`` is set (direction 1 is the
most significant bit). Direction indices are 1-based everywhere in the
public API.
"""
from __future__ import annotations

import itertools
import json
import logging
import math
from typing import Iterator, Mapping, NamedTuple, Sequence

import numpy as np

from .errors import (
    DuplicateAxis,
    IndexOutOfRange,
    InvalidSign,
    LengthMismatch,
    NonUnitDirection,
    SizeOutOfRange,
)

logger = logging.getLogger(__name__)

MAX_N = 20
UNIT_TOL = 1e-9
RENORMALIZE_TOL = 1e-6

SpinConfig = tuple  # tuple[int, ...] of +1 / -1


class Direction(NamedTuple):
    x: float
    y: float
    z: float

    def dot(self, other: "Direction") -> float:
        return self.x * other.x + self.y * other.y + self.z * other.z


class DirectionSet:
    """Ordered, immutable list of ``N`` unit vectors, ``1 <= N <= 20``."""

    __slots__ = ("_vectors",)

    def __init__(self, dirs):
        vecs = np.array(dirs, dtype=float)
        if vecs.ndim != 2 or vecs.shape[1] != 3:
            raise LengthMismatch(f"directions must be a list of 3-vectors, got shape {vecs.shape}")
        if not 1 <= len(vecs) <= MAX_N:
            raise SizeOutOfRange(f"number of directions must be in [1, {MAX_N}], got {len(vecs)}")
        if not np.all(np.isfinite(vecs)):
            raise NonUnitDirection("directions must be finite")
        norms = np.linalg.norm(vecs, axis=1)
        bad = np.flatnonzero(np.abs(norms - 1.0) > UNIT_TOL)
        if bad.size:
            j = int(bad[0])
            raise NonUnitDirection(f"direction {j + 1} has norm {norms[j]!r}, expected 1")
        vecs.setflags(write=False)
        self._vectors = vecs

    @property
    def vectors(self) -> np.ndarray:
        """Read-only ``(N, 3)`` array."""
        return self._vectors

    @property
    def n(self) -> int:
        return len(self._vectors)

    def __len__(self) -> int:
        return len(self._vectors)

    def __iter__(self) -> Iterator[Direction]:
        return (Direction(*map(float, v)) for v in self._vectors)

    def direction(self, j: int) -> Direction:
        check_index(j, self.n)
        return Direction(*map(float, self._vectors[j - 1]))

    def dot(self, j: int, k: int) -> float:
        check_index(j, self.n)
        check_index(k, self.n)
        return float(self._vectors[j - 1] @ self._vectors[k - 1])

    def gram(self) -> np.ndarray:
        return self._vectors @ self._vectors.T

    def to_list(self) -> list[list[float]]:
        return self._vectors.tolist()

    def __eq__(self, other) -> bool:
        return isinstance(other, DirectionSet) and np.array_equal(self._vectors, other._vectors)

    def __hash__(self) -> int:
        return hash(self._vectors.tobytes())

    def __repr__(self) -> str:
        return f"DirectionSet({self.to_list()!r})"


# -- validation helpers ---------------------------------------------------


def check_n(n: int, max_n: int = MAX_N) -> int:
    if isinstance(n, bool) or int(n) != n or not 1 <= n <= max_n:
        raise SizeOutOfRange(f"n must be an integer in [1, {max_n}], got {n!r}")
    return int(n)


def check_index(j: int, n: int) -> int:
    if isinstance(j, bool) or int(j) != j or not 1 <= j <= n:
        raise IndexOutOfRange(f"direction index {j!r} out of range 1..{n}")
    return int(j)


def check_sign(s) -> int:
    if isinstance(s, str):
        if s in ("+", "+1"):
            return 1
        if s in ("-", "-1"):
            return -1
        raise InvalidSign(f"sign must be '+' or '-', got {s!r}")
    if s in (1, -1) and not isinstance(s, bool):
        return int(s)
    raise InvalidSign(f"sign must be +1 or -1, got {s!r}")


def check_axes(axes: Sequence[int], n: int) -> tuple[int, ...]:
    axes = tuple(check_index(j, n) for j in axes)
    if len(set(axes)) != len(axes):
        raise DuplicateAxis(f"axes must be distinct, got {axes}")
    return axes


def check_assignment(a: Mapping[int, int], n: int) -> dict[int, int]:
    if not 1 <= len(a) <= n:
        raise SizeOutOfRange(f"assignment must fix between 1 and {n} directions, got {len(a)}")
    return {check_index(j, n): check_sign(s) for j, s in a.items()}


def check_config(c: Sequence[int], n: int) -> tuple[int, ...]:
    if len(c) != n:
        raise LengthMismatch(f"configuration has length {len(c)}, expected {n}")
    return tuple(check_sign(s) for s in c)


# -- configurations -------------------------------------------------------


def sign_str(signs: Sequence[int]) -> str:
    return "".join("+" if s > 0 else "-" for s in signs)


def parse_signs(text: str) -> tuple[int, ...]:
    return tuple(check_sign(ch) for ch in text)


def flip_all(c: Sequence[int]) -> tuple[int, ...]:
    return tuple(-s for s in c)


def config_index(c: Sequence[int]) -> int:
    """Position of ``c`` in the enumeration order."""
    r = 0
    for s in c:
        r = (r << 1) | (s < 0)
    return r


def config_at(r: int, n: int) -> tuple[int, ...]:
    return tuple(-1 if (r >> (n - 1 - j)) & 1 else 1 for j in range(n))


def sign_matrix(n: int) -> np.ndarray:
    """``(2**n, n)`` int8 array; row ``r`` is the ``r``-th configuration."""
    check_n(n)
    r = np.arange(2**n, dtype=np.int64)[:, None]
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)[None, :]
    return (1 - 2 * ((r >> shifts) & 1)).astype(np.int8)


def enumerate_configs(n: int) -> Iterator[tuple[int, ...]]:
    check_n(n)
    return itertools.product((1, -1), repeat=n)


def matching_mask(n: int, a: Mapping[int, int]) -> np.ndarray:
    """Boolean mask over the enumeration selecting configs that agree with ``a``."""
    a = check_assignment(a, n)
    signs = sign_matrix(n)
    mask = np.ones(2**n, dtype=bool)
    for j, s in a.items():
        mask &= signs[:, j - 1] == s
    return mask


def configs_matching(n: int, a: Mapping[int, int]) -> Iterator[tuple[int, ...]]:
    check_n(n)
    a = check_assignment(a, n)
    slots = [(a[j],) if j in a else (1, -1) for j in range(1, n + 1)]
    return itertools.product(*slots)


# -- construction and IO --------------------------------------------------


def directions_from_spherical(angles: Sequence[Sequence[float]]) -> DirectionSet:
    """Build unit vectors ``(sin t cos p, sin t sin p, cos t)`` from degree pairs."""
    vecs = []
    for theta_deg, phi_deg in angles:
        t = math.radians(theta_deg)
        p = math.radians(phi_deg)
        vecs.append((math.sin(t) * math.cos(p), math.sin(t) * math.sin(p), math.cos(t)))
    return DirectionSet(vecs)


def _normalized(vectors) -> list[list[float]]:
    out = []
    for idx, v in enumerate(vectors, start=1):
        v = [float(c) for c in v]
        if len(v) != 3:
            raise LengthMismatch(f"direction {idx} has {len(v)} components, expected 3")
        norm = math.sqrt(sum(c * c for c in v))
        err = abs(norm - 1.0)
        if err > RENORMALIZE_TOL:
            raise NonUnitDirection(f"direction {idx} has norm {norm!r}; off by more than {RENORMALIZE_TOL}")
        if err > UNIT_TOL:
            logger.warning("renormalizing direction %d (norm %r)", idx, norm)
            v = [c / norm for c in v]
        out.append(v)
    return out


def directions_from_document(doc: Mapping) -> DirectionSet:
    """Parse ``{"directions": [[x,y,z],...]}`` or ``{"spherical_deg": [[theta,phi],...]}``."""
    if "directions" in doc:
        return DirectionSet(_normalized(doc["directions"]))
    if "spherical_deg" in doc:
        return directions_from_spherical(doc["spherical_deg"])
    raise LengthMismatch("direction document needs a 'directions' or 'spherical_deg' key")


def load_directions(path) -> DirectionSet:
    with open(path, encoding="utf-8") as fh:
        return directions_from_document(json.load(fh))


def random_directions(n: int, rng: np.random.Generator) -> DirectionSet:
    """``n`` directions drawn uniformly from the unit sphere."""
    v = rng.standard_normal((n, 3))
    return DirectionSet(v / np.linalg.norm(v, axis=1, keepdims=True))
