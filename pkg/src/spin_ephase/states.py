"""Amplitude distributions ``Z: {+1,-1}^N -> quaternions``.

States are unnormalized. Canonical kinds (isotropic, eigenstate) evaluate
through the closed-form rule ``Z(s) = sum_j s_j N[n_j]``; dense states hold a
``(2**N, 4)`` table in enumeration order.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import DegenerateState, SizeOutOfRange
from .phase_space import (
    MAX_N,
    DirectionSet,
    check_config,
    check_index,
    check_sign,
    config_index,
    directions_from_document,
    sign_matrix,
)
from .quaternion import ATOL, Quaternion, check_pure, embed_direction

ISOTROPIC = "isotropic"
EIGENSTATE = "eigenstate"
DENSE = "dense"


@dataclass(frozen=True, eq=False)
class AmplitudeState:
    """An amplitude distribution over the phase space of ``dirs``.

    ``global_sign`` multiplies every amplitude by ``+1`` or ``-1``; it lets the
    negated isotropic state stay in closed form.
    """

    dirs: DirectionSet
    kind: str
    index: Optional[int] = None
    sign: Optional[int] = None
    table: Optional[np.ndarray] = field(default=None, repr=False)
    global_sign: int = 1

    @property
    def n(self) -> int:
        return self.dirs.n

    @property
    def is_closed_form(self) -> bool:
        return self.kind != DENSE

    def amplitude_at(self, c: Sequence[int]) -> Quaternion:
        return amplitude_at(self, c)

    def amplitudes(self) -> np.ndarray:
        """The full ``(2**N, 4)`` table, computed if not stored."""
        if self.kind == DENSE:
            return self.table
        return _closed_form_table(self)

    def describe(self) -> str:
        if self.kind == EIGENSTATE:
            return f"eigenstate:{self.index}:{'+' if self.sign > 0 else '-'}"
        if self.kind == DENSE:
            return "dense"
        return ISOTROPIC if self.global_sign > 0 else "isotropic(negated)"


def elementary_amplitude(dirs: DirectionSet, c: Sequence[int]) -> Quaternion:
    """``sum_j s_j N[n_j]`` for one configuration."""
    c = check_config(c, dirs.n)
    total = Quaternion()
    for s, d in zip(c, dirs):
        total = total + s * embed_direction(d)
    return check_pure(total)


def build_isotropic(dirs: DirectionSet) -> AmplitudeState:
    return AmplitudeState(dirs, ISOTROPIC)


def build_eigenstate(dirs: DirectionSet, j: int, sigma) -> AmplitudeState:
    """Closed-form amplitude restricted to configurations with ``s_j = sigma``."""
    j = check_index(j, dirs.n)
    return AmplitudeState(dirs, EIGENSTATE, index=j, sign=check_sign(sigma))


def build_dense(dirs: DirectionSet, table) -> AmplitudeState:
    table = np.array(table, dtype=float)
    if table.shape != (2**dirs.n, 4):
        raise SizeOutOfRange(f"dense table must have shape {(2**dirs.n, 4)}, got {table.shape}")
    if np.max(np.abs(table[:, 0]), initial=0.0) > ATOL:
        raise ValueError("dense amplitudes must be pure quaternions")
    if not np.any(table != 0.0):
        raise DegenerateState("amplitude distribution is identically zero")
    table.setflags(write=False)
    return AmplitudeState(dirs, DENSE, table=table)


def _closed_form_table(state: AmplitudeState) -> np.ndarray:
    signs = sign_matrix(state.n).astype(float)
    table = np.zeros((2**state.n, 4))
    table[:, 1:] = signs @ state.dirs.vectors
    if state.kind == EIGENSTATE:
        table[signs[:, state.index - 1] != state.sign] = 0.0
    if state.global_sign < 0:
        table = -table
    return table


def to_dense(state: AmplitudeState) -> AmplitudeState:
    if state.n > MAX_N:
        raise SizeOutOfRange(f"dense tables are limited to N <= {MAX_N}")
    if state.kind == DENSE:
        return state
    return build_dense(state.dirs, _closed_form_table(state))


def negate(state: AmplitudeState) -> AmplitudeState:
    if state.kind == DENSE:
        return build_dense(state.dirs, -state.table)
    return AmplitudeState(state.dirs, state.kind, state.index, state.sign, None, -state.global_sign)


def amplitude_at(state: AmplitudeState, c: Sequence[int]) -> Quaternion:
    c = check_config(c, state.n)
    if state.kind == DENSE:
        return check_pure(Quaternion.from_array(state.table[config_index(c)]))
    if state.kind == EIGENSTATE and c[state.index - 1] != state.sign:
        return Quaternion()
    z = elementary_amplitude(state.dirs, c)
    return -z if state.global_sign < 0 else z


# -- serialization --------------------------------------------------------


def dense_to_document(state: AmplitudeState) -> dict:
    dense = to_dense(state)
    return {"dirs": dense.dirs.to_list(), "amps": dense.table.tolist()}


def dense_from_document(doc: dict) -> AmplitudeState:
    dirs = doc["dirs"]
    dirs = directions_from_document(dirs if isinstance(dirs, dict) else {"directions": dirs})
    return build_dense(dirs, doc["amps"])


def load_dense(path) -> AmplitudeState:
    with open(path, encoding="utf-8") as fh:
        return dense_from_document(json.load(fh))
