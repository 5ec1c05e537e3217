"""F2-linear recurrences ``x_{i+1} = B x_i`` and their overlapping s-tuples.

For a primitive B the tuples of the periodic orbit, plus the origin, are
exactly the digital net generated by ``(I, B, ..., B^(s-1))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .errors import DimensionError, SingularMatrixError
from .gf2 import (
    BitMatrix,
    BitVector,
    antidiag_j,
    check_dim,
    identity,
    is_invertible,
    is_primitive,
    matvec,
    multiply,
    pascal_p,
)
from .net import NetSpec, generate_points, phi


@dataclass(frozen=True)
class RecurrenceSpec:
    b: BitMatrix
    seed: BitVector
    length: int | None = None  # defaults to one full period

    def __post_init__(self):
        if self.seed.m != self.b.m:
            raise DimensionError(f"seed of size {self.seed.m} for a {self.b.m}x{self.b.m} matrix")
        if not self.seed:
            raise ValueError("seed must be nonzero")
        if not is_invertible(self.b):
            raise SingularMatrixError(f"recurrence matrix {self.b.compact()} is singular")
        if self.length is not None and self.length < 0:
            raise ValueError("length must be >= 0")


class Orbit(NamedTuple):
    states: list[BitVector]
    period: int


@dataclass(frozen=True)
class TupleSet:
    m: int
    s: int
    tuples: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.tuples)

    def as_set(self) -> set[tuple[int, ...]]:
        return set(self.tuples)


def recurrence_orbit(spec: RecurrenceSpec) -> Orbit:
    """States ``x_1 = seed, x_2 = B x_1, ...`` and the period of the orbit.

    Since B is invertible the orbit of a nonzero seed is purely periodic.
    """
    b, seed = spec.b, spec.seed
    x = matvec(b, seed)
    period = 1
    while x != seed:
        x = matvec(b, x)
        period += 1
    n = period if spec.length is None else spec.length
    states = []
    x = seed
    for _ in range(n):
        states.append(x)
        x = matvec(b, x)
    return Orbit(states, period)


def overlapping_tuples(spec: RecurrenceSpec, s: int) -> TupleSet:
    """One tuple ``(phi(x_i), ..., phi(x_{i+s-1}))`` per ``i = 1..p``, indices taken mod p."""
    if s < 1:
        raise ValueError("tuple width must be >= 1")
    states, p = recurrence_orbit(RecurrenceSpec(spec.b, spec.seed, None))
    vals = [phi(x) for x in states]
    tuples = tuple(tuple(vals[(i + k) % p] for k in range(s)) for i in range(p))
    return TupleSet(spec.b.m, s, tuples)


def tuple_set_equals_net(spec: RecurrenceSpec, s: int) -> bool:
    """Whether the tuple set plus the origin equals the net of ``(I, B, ..., B^(s-1))`` as sets.

    Requires a primitive B.
    """
    b = spec.b
    if not is_primitive(b):
        raise ValueError(f"{b.compact()} is not primitive")
    lhs = overlapping_tuples(spec, s).as_set() | {(0,) * s}
    mats = [identity(b.m)]
    for _ in range(s - 1):
        mats.append(multiply(mats[-1], b))
    rhs = set(generate_points(NetSpec(b.m, tuple(mats))).points)
    return lhs == rhs


def faure_nets(m: int) -> tuple[NetSpec, NetSpec]:
    """The first ``2**m`` Faure points ``(I, P)`` and the 3-d extension ``(I, P, J)``."""
    check_dim(m)
    i, p = identity(m), pascal_p(m)
    return NetSpec(m, (i, p)), NetSpec(m, (i, p, antidiag_j(m)))
