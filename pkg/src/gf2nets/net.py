"""Digital nets over F2: point generation and exact t-values.

The t-value is computed two independent ways.  :func:`t_value_rank` uses the
linear-independence criterion on leading rows of the generating matrices;
:func:`t_value_geometric` counts points in every elementary interval.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import comb
from typing import Iterator, Sequence

import numpy as np

from .errors import BudgetExceededError, DimensionError, SingularMatrixError
from .gf2 import (
    BitMatrix,
    BitVector,
    EchelonBasis,
    is_invertible,
    is_unipotent_lower,
    mul_rows,
    reverse_bits,
)

GEOMETRIC_BUDGET = 10**9


@dataclass(frozen=True)
class NetSpec:
    """Generating matrices ``(C_1, ..., C_s)``, all ``m x m``; singular ones allowed."""

    m: int
    mats: tuple[BitMatrix, ...]

    def __post_init__(self):
        mats = tuple(self.mats)
        object.__setattr__(self, "mats", mats)
        if not mats:
            raise ValueError("a net needs at least one generating matrix")
        for c in mats:
            if c.m != self.m:
                raise DimensionError(f"matrix of size {c.m} in a net with m={self.m}")

    @classmethod
    def of(cls, *mats: BitMatrix) -> NetSpec:
        return cls(mats[0].m, mats)

    @property
    def s(self) -> int:
        return len(self.mats)

    def transformed(self, lefts: Sequence[BitMatrix], g: BitMatrix) -> NetSpec:
        """The spec ``(L_1 C_1 G, ..., L_s C_s G)``."""
        if len(lefts) != self.s:
            raise DimensionError(f"need {self.s} left factors, got {len(lefts)}")
        for x in (*lefts, g):
            if x.m != self.m:
                raise DimensionError(f"matrix of size {x.m} in a net with m={self.m}")
        mats = tuple(
            BitMatrix(self.m, mul_rows(mul_rows(l.rows, c.rows), g.rows))
            for l, c in zip(lefts, self.mats)
        )
        return NetSpec(self.m, mats)


@dataclass(frozen=True)
class PointSet:
    """The ``2**m`` points of a digital net, point ``l`` at index ``l``.

    Each coordinate is stored as the integer ``2**m * x``, an m-bit dyadic.
    Duplicates are kept (a multiset).
    """

    m: int
    s: int
    points: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def as_floats(self) -> np.ndarray:
        return np.asarray(self.points, dtype=float).reshape(-1, self.s) / (1 << self.m)


@dataclass(frozen=True)
class TValueResult:
    """Exact t-value with a minimality certificate.

    For ``t >= 1``, ``witness`` is a composition of ``m - t + 1`` whose
    selected rows are linearly dependent, so no smaller t can hold.  It is
    ``None`` when ``t == 0``.
    """

    m: int
    s: int
    t: int
    witness: tuple[int, ...] | None = None

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "s": self.s,
            "t": self.t,
            "witness": list(self.witness) if self.witness is not None else None,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> TValueResult:
        d = json.loads(text)
        w = d["witness"]
        return cls(d["m"], d["s"], d["t"], tuple(w) if w is not None else None)


def phi(v: BitVector) -> int:
    """``2**m * (y_1/2 + y_2/4 + ... + y_m/2**m)``; entry 1 is the most significant bit."""
    return reverse_bits(v.bits, v.m)


def _coordinate_table(c: BitMatrix) -> list[int]:
    """phi(C x) for every digit vector x, indexed by the integer whose bit k is x_{k+1}."""
    m = c.m
    cols = [0] * m
    for i, r in enumerate(c.rows):
        w = 1 << (m - 1 - i)
        for k in range(m):
            if (r >> k) & 1:
                cols[k] |= w
    table = [0] * (1 << m)
    for l in range(1, 1 << m):
        low = l & -l
        table[l] = table[l ^ low] ^ cols[low.bit_length() - 1]
    return table


def generate_points(spec: NetSpec) -> PointSet:
    """Point ``l`` has coordinate ``j`` equal to ``phi(C_j (i_0, ..., i_{m-1})^T)``
    where ``i_0`` is the least significant binary digit of ``l``."""
    tables = [_coordinate_table(c) for c in spec.mats]
    pts = tuple(zip(*tables))
    return PointSet(spec.m, spec.s, pts)


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All tuples of ``parts`` nonnegative ints summing to ``total``.

    Order is descending lexicographic, e.g. ``(1,0,0), (0,1,0), (0,0,1)``.
    """
    if total < 0 or parts < 1:
        raise ValueError("need total >= 0 and parts >= 1")
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in compositions(total - first, parts - 1):
            yield (first, *rest)


def first_dependent(rowlists: Sequence[Sequence[int]], k: int) -> tuple[int, ...] | None:
    """Find a composition ``d`` of ``k`` whose leading-row system is dependent.

    ``rowlists[i]`` holds the packed rows of ``C_i``.  Returns ``None`` when
    every composition of ``k`` selects independent rows.  The echelon basis
    of a shared prefix ``(d_1, ..., d_p)`` is reused across all its
    completions, and a dependent prefix prunes every larger ``d_p``.
    """
    s = len(rowlists)
    basis = EchelonBasis()
    comp = [0] * s

    def rec(p: int, remaining: int) -> tuple[int, ...] | None:
        n0 = len(basis)
        rows = rowlists[p]
        if p == s - 1:
            for idx in range(remaining):
                if idx >= len(rows) or not basis.insert(rows[idx]):
                    basis.truncate(n0)
                    comp[p] = remaining
                    return tuple(comp)
            basis.truncate(n0)
            return None
        for d in range(remaining + 1):
            if d:
                if d > len(rows) or not basis.insert(rows[d - 1]):
                    basis.truncate(n0)
                    comp[p] = d
                    for q in range(p + 1, s):
                        comp[q] = 0
                    comp[p + 1] = remaining - d
                    return tuple(comp)
            comp[p] = d
            w = rec(p + 1, remaining - d)
            if w is not None:
                basis.truncate(n0)
                return w
        basis.truncate(n0)
        return None

    return rec(0, k)


def t_value_rank(spec: NetSpec) -> TValueResult:
    """Least t such that, for every composition ``d`` of ``m - t``, the first
    ``d_i`` rows of each ``C_i`` are jointly linearly independent.

    Independence for ``k`` rows implies it for ``k - 1`` (subsets), so the
    largest good ``k`` is found by bisection.
    """
    m = spec.m
    rowlists = [c.rows for c in spec.mats]
    lo, hi = 0, m + 1  # all compositions of lo are independent; hi fails (m+1 is a sentinel)
    witness = None
    while hi - lo > 1:
        mid = (lo + hi) // 2
        w = first_dependent(rowlists, mid)
        if w is None:
            lo = mid
        else:
            hi, witness = mid, w
    t = m - lo
    return TValueResult(m, spec.s, t, witness if t else None)


def is_t0(spec: NetSpec) -> bool:
    return first_dependent([c.rows for c in spec.mats], spec.m) is None


def geometric_cost(m: int, s: int) -> int:
    """Cell assignments needed by :func:`t_value_geometric` in the worst case."""
    return s * (1 << m) * sum(comb(k + s - 1, s - 1) for k in range(m + 1))


def _is_net(coords: np.ndarray, m: int, t: int) -> bool:
    s = coords.shape[1]
    target = 1 << t
    ncells = 1 << (m - t)
    for d in compositions(m - t, s):
        key = np.zeros(coords.shape[0], dtype=np.int64)
        for i, di in enumerate(d):
            if di:
                key = (key << di) | (coords[:, i] >> (m - di))
        counts = np.bincount(key, minlength=ncells)
        if counts.shape[0] != ncells or not np.all(counts == target):
            return False
    return True


def t_value_geometric(points: PointSet, budget: int = GEOMETRIC_BUDGET) -> int:
    """Least t such that every elementary interval of volume ``2**(t-m)``
    holds exactly ``2**t`` points, counted with multiplicity.

    Each point is bucketed by the leading ``d_i`` bits of coordinate ``i``.
    Raises :class:`BudgetExceededError` rather than truncating the search.
    """
    m, s = points.m, points.s
    if len(points) != 1 << m:
        raise ValueError(f"expected {1 << m} points, got {len(points)}")
    cost = geometric_cost(m, s)
    if cost > budget:
        raise BudgetExceededError(f"geometric t-value for m={m}, s={s} needs {cost} > {budget}")
    coords = np.asarray(points.points, dtype=np.int64).reshape(-1, s)
    for t in range(m + 1):
        if _is_net(coords, m, t):
            return t
    raise AssertionError("every point set is an (m, m, s)-net")


def t_invariance_check(spec: NetSpec, lefts: Sequence[BitMatrix], g: BitMatrix) -> bool:
    """Whether ``t(C_1..C_s) == t(L_1 C_1 G, ..., L_s C_s G)``."""
    for l in lefts:
        if not is_unipotent_lower(l):
            raise ValueError(f"left factor {l.compact()} is not unit-diagonal lower triangular")
    if not is_invertible(g):
        raise SingularMatrixError(f"right factor {g.compact()} is singular")
    return t_value_rank(spec).t == t_value_rank(spec.transformed(lefts, g)).t
