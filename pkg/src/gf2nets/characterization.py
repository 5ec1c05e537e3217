"""Which B give t(I, B, B^2) = 0, constructively.

The answer is the conjugacy class of ``P J`` under unit-diagonal lower
triangular matrices.  This module builds the decompositions
``B = L1 J L2`` and ``B = L P J L^-1`` explicitly, runs the exhaustive
search for small m, and probes the subspace-dimension facts behind the
argument.
"""

from __future__ import annotations

import json
import time
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .errors import (
    DimensionError,
    HypothesisError,
    NoFactorizationError,
    NoSolutionError,
    NotT0Error,
    TheoremViolation,
)
from .gf2 import (
    BitMatrix,
    EchelonBasis,
    antidiag_j,
    check_dim,
    identity,
    inverse,
    is_primitive,
    lu_unit_diagonal,
    mul_rows,
    multiply,
    nullspace,
    pascal_p,
    rank,
    reverse_bits,
    span_equal,
)
from .net import NetSpec, first_dependent, t_value_rank

MAX_SEARCH_DIM = 5
MAX_PROBE_DIM = 12
# The orbit turns out to be as large as the conjugating group, 2**(m(m-1)/2).
MAX_ORBIT_DIM = 7


def pj(m: int) -> BitMatrix:
    return multiply(pascal_p(m), antidiag_j(m))


class Characterization2D(NamedTuple):
    """``l1 @ J @ l2 == B`` with both factors unit-diagonal lower triangular."""

    l1: BitMatrix
    l2: BitMatrix


class ConjugacyWitness(NamedTuple):
    """``l @ P @ J @ inverse(l) == B`` with ``l`` unit-diagonal lower triangular."""

    l: BitMatrix


def characterize_2d(b: BitMatrix) -> Characterization2D:
    """Write ``b = L1 J L2`` when ``t(I, b) = 0``.

    ``b J`` then has an LU factorization ``L' U'``; take ``L1 = L'`` and
    ``L2 = J U' J``.  Raises :class:`NotT0Error` otherwise.
    """
    m = b.m
    j = antidiag_j(m)
    try:
        lo, up = lu_unit_diagonal(multiply(b, j))
    except NoFactorizationError:
        res = t_value_rank(NetSpec.of(identity(m), b))
        if res.t == 0:
            raise TheoremViolation(f"t(I,B)=0 but BJ has no unit LU factorization; B={b.compact()}")
        raise NotT0Error(f"t(I, B) != 0 for B={b.compact()}", res) from None
    l2 = multiply(multiply(j, up), j)
    if multiply(multiply(lo, j), l2) != b:
        raise TheoremViolation(f"L1 J L2 does not recompose B={b.compact()}")
    return Characterization2D(lo, l2)


def lower_transform(c: BitMatrix, c_prime: BitMatrix) -> BitMatrix:
    """A unit-diagonal lower-triangular ``L`` with ``L @ c == c_prime``.

    Row ``i`` of ``L c`` is ``c_i`` plus a combination of ``c_1..c_{i-1}``,
    so each row is solved separately.  When ``c`` has dependent rows the
    solution is not unique; dependent rows always get coefficient zero.
    Raises :class:`NoSolutionError` if no such ``L`` exists.
    """
    if c.m != c_prime.m:
        raise DimensionError(f"dimension mismatch: {c.m} vs {c_prime.m}")
    m = c.m
    basis: list[tuple[int, int, int]] = []  # (pivot bit, vector, combination of c rows)
    out = []
    for i in range(m):
        v = c.rows[i] ^ c_prime.rows[i]
        combo = 0
        for piv, vec, cmb in basis:
            if v & piv:
                v ^= vec
                combo ^= cmb
        if v:
            raise NoSolutionError(
                f"row {i + 1} of {c_prime.compact()} is not row {i + 1} of {c.compact()} "
                "plus a combination of earlier rows"
            )
        out.append(combo | (1 << i))
        w, cmb = c.rows[i], 1 << i
        for piv, vec, bc in basis:
            if w & piv:
                w ^= vec
                cmb ^= bc
        if w:
            basis.append((w & -w, w, cmb))
    return BitMatrix(m, tuple(out))


def decompose_t0_triple(b: BitMatrix) -> ConjugacyWitness:
    """Find ``L`` with ``b = L P J L^-1`` when ``t(I, b, b^2) = 0``.

    Follows the constructive argument: ``b = L1 J L2`` from
    :func:`characterize_2d`, then ``J L2 L1 J`` must equal ``P`` and
    ``L = L1``.  Any failure after t = 0 is confirmed raises
    :class:`TheoremViolation`.
    """
    m = b.m
    b2 = multiply(b, b)
    res = t_value_rank(NetSpec.of(identity(m), b, b2))
    if res.t != 0:
        raise NotT0Error(f"t(I, B, B^2) != 0 for B={b.compact()}", res)
    try:
        l1, l2 = characterize_2d(b)
    except NotT0Error as exc:
        raise TheoremViolation(f"t(I,B,B^2)=0 but t(I,B)!=0 for B={b.compact()}") from exc
    j = antidiag_j(m)
    if multiply(multiply(multiply(j, l2), l1), j) != pascal_p(m):
        raise TheoremViolation(f"J L2 L1 J != P for B={b.compact()}, L1={l1}, L2={l2}")
    if conjugate(l1, pj(m)) != b:
        raise TheoremViolation(f"L P J L^-1 does not recompose B={b.compact()}")
    return ConjugacyWitness(l1)


def conjugate(l: BitMatrix, x: BitMatrix) -> BitMatrix:
    return multiply(multiply(l, x), inverse(l))


def _elementary_lower(m: int) -> list[tuple[int, ...]]:
    """Packed rows of ``I + E_ij`` for i > j; these generate the unipotent lower group."""
    gens = []
    for i in range(m):
        for j in range(i):
            rows = [1 << k for k in range(m)]
            rows[i] |= 1 << j
            gens.append(tuple(rows))
    return gens


def conjugacy_orbit(m: int, with_witnesses: bool = False):
    """All ``L P J L^-1`` over unit-diagonal lower ``L``, sorted by :attr:`BitMatrix.key`.

    Computed by breadth-first search over conjugation by the elementary
    generators ``I + E_ij`` (each its own inverse).  With ``with_witnesses``
    a dict mapping each member to one conjugator ``L`` is returned as well.
    Limited to ``m <= 7``: the orbit has ``2**(m(m-1)/2)`` members.
    """
    check_dim(m, MAX_ORBIT_DIM)
    start = pj(m).rows
    gens = _elementary_lower(m)
    seen = {start: identity(m).rows}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        lx = seen[x]
        for g in gens:
            y = mul_rows(mul_rows(g, x), g)
            if y not in seen:
                seen[y] = mul_rows(g, lx)
                queue.append(y)
    members = sorted((BitMatrix(m, rows) for rows in seen), key=lambda a: a.key)
    if with_witnesses:
        return members, {a: BitMatrix(m, seen[a.rows]) for a in members}
    return members


# exhaustive search


@dataclass
class SearchReport:
    m: int
    found: list[BitMatrix]
    orbit: list[BitMatrix]
    all_cubes_identity: bool
    primitive_members: list[BitMatrix]
    candidates_scanned: int = 0
    filter_pass: int = 0
    elapsed_ms: int = 0
    workers: int = 1

    @property
    def equal_sets(self) -> bool:
        return set(self.found) == set(self.orbit)

    @property
    def verified(self) -> bool:
        return self.equal_sets and self.all_cubes_identity

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "found": [a.compact() for a in self.found],
            "orbit": [a.compact() for a in self.orbit],
            "equal_sets": self.equal_sets,
            "all_cubes_identity": self.all_cubes_identity,
            "primitive_members": [a.compact() for a in self.primitive_members],
            "candidates_scanned": self.candidates_scanned,
            "filter_pass": self.filter_pass,
            "elapsed_ms": self.elapsed_ms,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _rev_table(m: int) -> list[int]:
    return [reverse_bits(x, m) for x in range(1 << m)]


def scan_chunk(m: int, prefix_key: int, prefix_rows: int) -> tuple[list[int], int]:
    """Scan every B whose first ``prefix_rows`` rows are fixed by ``prefix_key``.

    These candidates form one contiguous range of :attr:`BitMatrix.key`
    values.  Rows are chosen top-down while tracking unpivoted elimination
    of ``B J``: the k-th leading minor of ``B J`` depends only on rows 1..k
    of ``B``, so a singular minor prunes the whole subtree.  Survivors of the
    filter (exactly the B with t(I, B) = 0) get the full rank test on
    ``(I, B, B^2)``.  Returns ``(keys of found B, filter passes)``.
    """
    rev = _rev_table(m)
    full = (1 << m) - 1
    ident = tuple(1 << i for i in range(m))
    prefix = [
        rev[(prefix_key >> (m * (prefix_rows - 1 - i))) & full] for i in range(prefix_rows)
    ]
    rows: list[int] = []
    urows: list[int] = []
    found: list[int] = []
    passes = 0

    def rec(k: int) -> None:
        nonlocal passes
        if k == m:
            passes += 1
            b = tuple(rows)
            b2 = mul_rows(b, b)
            if first_dependent((ident, b, b2), m) is None:
                found.append(BitMatrix(m, b).key)
            return
        choices = (prefix[k],) if k < prefix_rows else range(1 << m)
        bit = 1 << k
        for r in choices:
            v = rev[r]  # row k+1 of B J
            for i in range(k):
                if (v >> i) & 1:
                    v ^= urows[i]
            if not v & bit:
                continue
            rows.append(r)
            urows.append(v)
            rec(k + 1)
            rows.pop()
            urows.pop()

    rec(0)
    return found, passes


def _scan_chunk_star(args):
    return scan_chunk(*args)


def exhaustive_search_t0(m: int, workers: int = 1, prefix_rows: int | None = None) -> SearchReport:
    """Scan all ``2**(m*m)`` matrices B for t(I, B, B^2) = 0 and compare with the orbit.

    The key space is split into ``2**(m * prefix_rows)`` contiguous ranges
    (one per choice of the leading rows) processed independently, serially
    or on a process pool.  The merged result is sorted, so it does not
    depend on ``workers``.
    """
    check_dim(m, MAX_SEARCH_DIM)
    if workers < 1:
        raise ValueError("workers must be >= 1")
    if prefix_rows is None:
        prefix_rows = min(m, 2)
    start = time.perf_counter()
    tasks = [(m, key, prefix_rows) for key in range(1 << (m * prefix_rows))]
    if workers == 1:
        parts = map(_scan_chunk_star, tasks)
    else:
        pool = ProcessPoolExecutor(max_workers=workers)
        parts = pool.map(_scan_chunk_star, tasks, chunksize=max(1, len(tasks) // (4 * workers)))
    keys: list[int] = []
    passes = 0
    try:
        for f, p in parts:
            keys.extend(f)
            passes += p
    finally:
        if workers > 1:
            pool.shutdown()
    found = [BitMatrix.from_key(m, k) for k in sorted(set(keys))]
    orbit = conjugacy_orbit(m)
    ident = identity(m)
    cubes = all(multiply(multiply(b, b), b) == ident for b in found)
    prims = [b for b in found if is_primitive(b)]
    elapsed = int((time.perf_counter() - start) * 1000)
    return SearchReport(
        m=m,
        found=found,
        orbit=orbit,
        all_cubes_identity=cubes,
        primitive_members=prims,
        candidates_scanned=1 << (m * m),
        filter_pass=passes,
        elapsed_ms=elapsed,
        workers=workers,
    )


def pj_identities_check(m: int) -> bool:
    """``P^2 == J^2 == (P J)^3 == I``, each evaluated by multiplication."""
    check_dim(m)
    i, p, j = identity(m), pascal_p(m), antidiag_j(m)
    x = multiply(p, j)
    return multiply(p, p) == i and multiply(j, j) == i and multiply(multiply(x, x), x) == i


# subspace probes


def _v_rows(a: BitMatrix, b: BitMatrix, c: BitMatrix, i: int, j: int) -> list[int]:
    m = a.m
    return list(a.rows[:i]) + list(b.rows[: m - i - j - 1]) + list(c.rows[:j])


def _require_t0(*mats: BitMatrix) -> None:
    res = t_value_rank(NetSpec.of(*mats))
    if res.t != 0:
        raise HypothesisError("probe requires t = 0", res)


def _check_probe_dim(*mats: BitMatrix) -> int:
    m = mats[0].m
    if any(x.m != m for x in mats):
        raise DimensionError("all matrices must share one dimension")
    check_dim(m, MAX_PROBE_DIM)
    return m


def intersection_dim(spans: Sequence[Sequence[int]], m: int) -> int:
    """Dimension of the intersection of row spans: ``m`` minus the rank of their joint annihilator."""
    ann: list[int] = []
    for rows in spans:
        ann.extend(nullspace(rows, m))
    return m - rank(ann)


@dataclass(frozen=True)
class SubspaceProbe:
    m: int
    j: int
    indices: tuple[int, ...]
    v_dims: tuple[int, ...]
    intersection_dim: int
    complement_count: int

    @property
    def expected_dim(self) -> int:
        return self.m - len(self.indices)

    @property
    def expected_complement(self) -> int:
        return 1 << self.j

    @property
    def holds(self) -> bool:
        return (
            all(d == self.m - 1 for d in self.v_dims)
            and self.intersection_dim == self.expected_dim
            and self.complement_count == self.expected_complement
        )


def subspace_dimension_probe(
    a: BitMatrix, b: BitMatrix, c: BitMatrix, j: int, indices: Sequence[int]
) -> SubspaceProbe:
    """Measure the spans ``V_ij = <a_1..a_i, b_1..b_{m-i-j-1}, c_1..c_j>`` of a t = 0 net.

    Reports ``dim V_ij`` for each selected ``i``, the dimension of their
    intersection, and the number of row vectors lying outside every
    ``V_ij`` with ``0 <= i <= m-j-1`` (by enumerating all ``2**m`` vectors).
    """
    m = _check_probe_dim(a, b, c)
    idx = tuple(indices)
    if not idx or len(set(idx)) != len(idx):
        raise ValueError("indices must be nonempty and distinct")
    if j < 0 or min(idx) < 0 or j + max(idx) > m - 1:
        raise ValueError(f"need 0 <= i and i + j <= {m - 1}")
    _require_t0(a, b, c)
    spans = [_v_rows(a, b, c, i, j) for i in idx]
    v_dims = tuple(rank(r) for r in spans)
    inter = intersection_dim(spans, m)
    bases = [EchelonBasis(_v_rows(a, b, c, i, j)) for i in range(m - j)]
    outside = sum(1 for x in range(1 << m) if all(x not in basis for basis in bases))
    return SubspaceProbe(m, j, idx, v_dims, inter, outside)


@dataclass
class TransportProbe:
    m: int
    transporter: BitMatrix
    coset_failures: list[int] = field(default_factory=list)
    span_failures: list[int] = field(default_factory=list)
    v_w_failures: list[tuple[int, int]] = field(default_factory=list)

    @property
    def coset_ok(self) -> bool:
        return not self.coset_failures

    @property
    def spans_ok(self) -> bool:
        return not self.span_failures

    @property
    def v_equals_w(self) -> bool:
        return not self.v_w_failures

    @property
    def holds(self) -> bool:
        return self.coset_ok and self.spans_ok and self.v_equals_w


def c_transport_probe(a: BitMatrix, b: BitMatrix, c: BitMatrix, c_prime: BitMatrix) -> TransportProbe:
    """Compare two third matrices ``c, c'`` that both give t(a, b, .) = 0.

    Checks, for every j, that ``c'_j`` lies in ``c_j + <c_1..c_{j-1}>``, that
    the first j rows of both span the same space, and that ``V_ij == W_ij``
    for all ``i + j <= m - 1``.  Also returns the lower-triangular
    transporter from :func:`lower_transform`.
    """
    m = _check_probe_dim(a, b, c, c_prime)
    _require_t0(a, b, c)
    _require_t0(a, b, c_prime)
    probe = TransportProbe(m, lower_transform(c, c_prime))
    for jj in range(1, m + 1):
        prev = EchelonBasis(c.rows[: jj - 1])
        if (c.rows[jj - 1] ^ c_prime.rows[jj - 1]) not in prev:
            probe.coset_failures.append(jj)
        if not span_equal(c.rows[:jj], c_prime.rows[:jj]):
            probe.span_failures.append(jj)
    for jj in range(m):
        for i in range(m - jj):
            if not span_equal(_v_rows(a, b, c, i, jj), _v_rows(a, b, c_prime, i, jj)):
                probe.v_w_failures.append((i, jj))
    return probe
