"""Bit-packed GF(2) vectors and square matrices.

Every row is a single Python int; bit ``j - 1`` holds column ``j``.  Row
operations are therefore plain XORs.  Supported dimensions are 1..64.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import (
    DimensionError,
    NoFactorizationError,
    OrderCapExceeded,
    SingularMatrixError,
)

MAX_DIM = 64
MAX_ENUM_DIM = 8


def check_dim(m: int, limit: int = MAX_DIM) -> int:
    if not isinstance(m, int) or isinstance(m, bool):
        raise DimensionError(f"dimension must be an int, got {m!r}")
    if not 1 <= m <= limit:
        raise DimensionError(f"dimension {m} outside supported range 1..{limit}")
    return m


def parity(x: int) -> int:
    return bin(x).count("1") & 1


def reverse_bits(x: int, m: int) -> int:
    """Reverse the low ``m`` bits of ``x``."""
    return int(format(x, f"0{m}b")[::-1], 2)


@dataclass(frozen=True)
class BitVector:
    """Length-``m`` vector over GF(2); bit ``i - 1`` of ``bits`` is entry ``i``."""

    m: int
    bits: int

    def __post_init__(self):
        check_dim(self.m)
        if self.bits < 0 or self.bits >> self.m:
            raise ValueError(f"bits {self.bits:#x} do not fit in dimension {self.m}")

    @classmethod
    def from_entries(cls, entries: Sequence[int]) -> BitVector:
        bits = 0
        for i, e in enumerate(entries):
            if e not in (0, 1):
                raise ValueError(f"entry {e!r} is not a bit")
            bits |= e << i
        return cls(len(entries), bits)

    @classmethod
    def unit(cls, m: int, i: int) -> BitVector:
        return cls(m, 1 << (i - 1))

    def entry(self, i: int) -> int:
        return (self.bits >> (i - 1)) & 1

    def entries(self) -> tuple[int, ...]:
        return tuple((self.bits >> i) & 1 for i in range(self.m))

    def __str__(self) -> str:
        return "".join(str(e) for e in self.entries())

    def __bool__(self) -> bool:
        return self.bits != 0


@dataclass(frozen=True)
class BitMatrix:
    """Square ``m x m`` matrix over GF(2) stored as ``m`` packed rows.

    ``rows[i - 1]`` is row ``i``; within a row, bit ``j - 1`` is column ``j``.
    Instances are immutable and hashable.
    """

    m: int
    rows: tuple[int, ...]

    def __post_init__(self):
        check_dim(self.m)
        rows = tuple(self.rows)
        object.__setattr__(self, "rows", rows)
        if len(rows) != self.m:
            raise DimensionError(f"expected {self.m} rows, got {len(rows)}")
        for r in rows:
            if r < 0 or r >> self.m:
                raise ValueError(f"row {r:#x} does not fit in dimension {self.m}")

    # construction / text format

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]]) -> BitMatrix:
        return cls(len(entries), tuple(BitVector.from_entries(r).bits for r in entries))

    @classmethod
    def parse(cls, text: str) -> BitMatrix:
        """Parse either the multi-line form or the compact ``"10,01"`` form.

        Raises :class:`~gf2nets.errors.MatrixParseError` with a 1-based
        line/column location on bad input.
        """
        from .io import parse_matrix

        return parse_matrix(text)

    def row_strings(self) -> list[str]:
        return ["".join("1" if (r >> j) & 1 else "0" for j in range(self.m)) for r in self.rows]

    def to_text(self) -> str:
        return "\n".join(self.row_strings())

    def compact(self) -> str:
        return ",".join(self.row_strings())

    def __str__(self) -> str:
        return self.compact()

    @property
    def key(self) -> int:
        """Canonical ordering key: the row strings concatenated and read as binary."""
        return int("".join(self.row_strings()), 2)

    @classmethod
    def from_key(cls, m: int, key: int) -> BitMatrix:
        rows = []
        for i in range(m):
            text_row = (key >> (m * (m - 1 - i))) & ((1 << m) - 1)
            rows.append(reverse_bits(text_row, m))
        return cls(m, tuple(rows))

    # entries

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i - 1] >> (j - 1)) & 1

    def row(self, i: int) -> BitVector:
        return BitVector(self.m, self.rows[i - 1])

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.m)] for r in self.rows]

    def transpose(self) -> BitMatrix:
        m = self.m
        cols = [0] * m
        for i, r in enumerate(self.rows):
            for j in range(m):
                if (r >> j) & 1:
                    cols[j] |= 1 << i
        return BitMatrix(m, tuple(cols))

    # arithmetic

    def __matmul__(self, other):
        if isinstance(other, BitMatrix):
            return multiply(self, other)
        if isinstance(other, BitVector):
            return matvec(self, other)
        return NotImplemented

    def __pow__(self, n: int) -> BitMatrix:
        return power(self, n)

    def __add__(self, other: BitMatrix) -> BitMatrix:
        _same_dim(self, other)
        return BitMatrix(self.m, tuple(a ^ b for a, b in zip(self.rows, other.rows)))

    def is_identity(self) -> bool:
        return all(r == 1 << i for i, r in enumerate(self.rows))


class TriangularPair(NamedTuple):
    """Unit-diagonal factors with ``l @ u`` equal to the factored matrix."""

    l: BitMatrix
    u: BitMatrix


def _same_dim(a: BitMatrix, b: BitMatrix) -> None:
    if a.m != b.m:
        raise DimensionError(f"dimension mismatch: {a.m} vs {b.m}")


# named matrices


@lru_cache(maxsize=None)
def identity(m: int) -> BitMatrix:
    check_dim(m)
    return BitMatrix(m, tuple(1 << i for i in range(m)))


@lru_cache(maxsize=None)
def antidiag_j(m: int) -> BitMatrix:
    """The reversal matrix: entry (i, j) is 1 iff i + j = m + 1."""
    check_dim(m)
    return BitMatrix(m, tuple(1 << (m - 1 - i) for i in range(m)))


@lru_cache(maxsize=None)
def pascal_p(m: int) -> BitMatrix:
    """Upper-triangular Pascal matrix mod 2, entry (i, j) = C(j-1, i-1) mod 2.

    Built column by column with Pascal's rule in F2: column j+1 is column j
    XOR column j shifted down one row.
    """
    check_dim(m)
    rows = [0] * m
    col = 1  # column 1: C(0, i-1), bit i-1 is row i
    for j in range(m):
        for i in range(m):
            if (col >> i) & 1:
                rows[i] |= 1 << j
        col = (col ^ (col << 1)) & ((1 << m) - 1)
    return BitMatrix(m, tuple(rows))


# products


def mul_rows(a_rows: Sequence[int], b_rows: Sequence[int]) -> tuple[int, ...]:
    """Product of packed row lists: row i of AB is the XOR of rows k of B with A[i,k] = 1."""
    out = []
    for r in a_rows:
        acc = 0
        k = 0
        while r:
            if r & 1:
                acc ^= b_rows[k]
            r >>= 1
            k += 1
        out.append(acc)
    return tuple(out)


def multiply(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    _same_dim(a, b)
    return BitMatrix(a.m, mul_rows(a.rows, b.rows))


def matvec(a: BitMatrix, v: BitVector) -> BitVector:
    if a.m != v.m:
        raise DimensionError(f"dimension mismatch: {a.m} vs {v.m}")
    bits = 0
    for i, r in enumerate(a.rows):
        bits |= parity(r & v.bits) << i
    return BitVector(a.m, bits)


def power(a: BitMatrix, n: int) -> BitMatrix:
    """``a ** n`` for ``n >= 0`` by repeated squaring; negative ``n`` inverts first."""
    if n < 0:
        a, n = inverse(a), -n
    result = identity(a.m).rows
    base = a.rows
    while n:
        if n & 1:
            result = mul_rows(result, base)
        base = mul_rows(base, base)
        n >>= 1
    return BitMatrix(a.m, result)


def inverse(a: BitMatrix) -> BitMatrix:
    """Gauss-Jordan inverse. Raises :class:`SingularMatrixError` if ``a`` is singular."""
    m = a.m
    work = list(a.rows)
    inv = [1 << i for i in range(m)]
    for col in range(m):
        bit = 1 << col
        pivot = next((r for r in range(col, m) if work[r] & bit), None)
        if pivot is None:
            raise SingularMatrixError(f"matrix {a.compact()} is singular")
        work[col], work[pivot] = work[pivot], work[col]
        inv[col], inv[pivot] = inv[pivot], inv[col]
        for r in range(m):
            if r != col and work[r] & bit:
                work[r] ^= work[col]
                inv[r] ^= inv[col]
    return BitMatrix(m, tuple(inv))


def is_invertible(a: BitMatrix) -> bool:
    return rank(a.rows) == a.m


# rank and echelon bases


class EchelonBasis:
    """Incrementally built basis of a row space.

    Each stored vector has been reduced by all earlier ones, so reducing a
    candidate against the list in insertion order is exact.  ``truncate``
    rolls back to an earlier size, which lets callers share the basis of a
    common prefix of rows.
    """

    __slots__ = ("vecs", "pivots")

    def __init__(self, rows: Iterable[int] = ()):
        self.vecs: list[int] = []
        self.pivots: list[int] = []
        for r in rows:
            self.insert(r)

    def __len__(self) -> int:
        return len(self.vecs)

    def reduce(self, v: int) -> int:
        for p, b in zip(self.pivots, self.vecs):
            if v & p:
                v ^= b
        return v

    def insert(self, v: int) -> bool:
        """Add ``v``; return False (and leave the basis unchanged) if it is dependent."""
        v = self.reduce(v)
        if not v:
            return False
        self.vecs.append(v)
        self.pivots.append(v & -v)
        return True

    def __contains__(self, v: int) -> bool:
        return self.reduce(v) == 0

    def truncate(self, n: int) -> None:
        del self.vecs[n:]
        del self.pivots[n:]

    def rref(self) -> tuple[int, ...]:
        """Reduced row echelon form, a canonical description of the span."""
        out: list[int] = []
        for v in self.vecs:
            for w in out:
                if v & (w & -w):
                    v ^= w
            piv = v & -v
            out = [w ^ v if w & piv else w for w in out]
            out.append(v)
        return tuple(sorted(out, key=lambda v: v & -v))


def rank(rows: Iterable[int | BitVector]) -> int:
    """Rank over GF(2) of a list of packed rows (ints or :class:`BitVector`)."""
    basis = EchelonBasis()
    for r in rows:
        basis.insert(r.bits if isinstance(r, BitVector) else r)
    return len(basis)


def span_equal(rows_a: Iterable[int], rows_b: Iterable[int]) -> bool:
    a = EchelonBasis(rows_a)
    b = EchelonBasis(rows_b)
    return len(a) == len(b) and all(v in a for v in b.vecs)


def nullspace(rows: Sequence[int], m: int) -> list[int]:
    """Basis of ``{x : r . x = 0 for every row r}`` (the annihilator of the row span)."""
    work = EchelonBasis(rows).rref()
    pivot_cols = [(v & -v).bit_length() - 1 for v in work]
    free = [c for c in range(m) if c not in pivot_cols]
    basis = []
    for f in free:
        x = 1 << f
        for pc, v in zip(pivot_cols, work):
            if (v >> f) & 1:
                x |= 1 << pc
        basis.append(x)
    return basis


# triangular structure and LU


def is_lower_triangular(a: BitMatrix) -> bool:
    return all(r >> (i + 1) == 0 for i, r in enumerate(a.rows))


def is_upper_triangular(a: BitMatrix) -> bool:
    return all(r & ((1 << i) - 1) == 0 for i, r in enumerate(a.rows))


def has_unit_diagonal(a: BitMatrix) -> bool:
    return all((r >> i) & 1 for i, r in enumerate(a.rows))


def is_unipotent_lower(a: BitMatrix) -> bool:
    return is_lower_triangular(a) and has_unit_diagonal(a)


def _eliminate_no_pivoting(rows: Sequence[int]) -> tuple[list[int], list[int]] | None:
    m = len(rows)
    u = list(rows)
    l = [1 << i for i in range(m)]
    for k in range(m):
        bit = 1 << k
        if not u[k] & bit:
            return None
        for i in range(k + 1, m):
            if u[i] & bit:
                u[i] ^= u[k]
                l[i] |= bit
    return l, u


def leading_minors_nonsingular(a: BitMatrix) -> bool:
    """True iff every top-left k x k submatrix of ``a`` is invertible."""
    return _eliminate_no_pivoting(a.rows) is not None


def lu_unit_diagonal(a: BitMatrix) -> TriangularPair:
    """Factor ``a = l @ u`` with unit-diagonal lower ``l`` and upper ``u``.

    Over GF(2) the factorization exists iff all leading principal minors are
    nonsingular, and is then unique.
    """
    res = _eliminate_no_pivoting(a.rows)
    if res is None:
        raise NoFactorizationError(f"matrix {a.compact()} has a singular leading minor")
    l, u = res
    return TriangularPair(BitMatrix(a.m, tuple(l)), BitMatrix(a.m, tuple(u)))


# order and primitivity


def multiplicative_order(a: BitMatrix, cap: int | None = None) -> int:
    """Least ``n >= 1`` with ``a**n == I``, found by repeated multiplication.

    ``cap`` defaults to ``2**m - 1``, the largest order occurring in GL(m, 2).
    """
    if cap is None:
        cap = (1 << a.m) - 1
    if cap < 1:
        raise ValueError("cap must be >= 1")
    if not is_invertible(a):
        raise SingularMatrixError(f"matrix {a.compact()} is singular")
    ident = identity(a.m).rows
    cur = a.rows
    for n in range(1, cap + 1):
        if cur == ident:
            return n
        cur = mul_rows(cur, a.rows)
    raise OrderCapExceeded(f"order of {a.compact()} exceeds {cap}")


@lru_cache(maxsize=None)
def _prime_factors_mersenne(m: int) -> tuple[int, ...]:
    from sympy import factorint

    return tuple(sorted(factorint((1 << m) - 1)))


def is_primitive(a: BitMatrix) -> bool:
    """True iff ``a`` is invertible with multiplicative order exactly ``2**m - 1``.

    Uses the prime factors of ``2**m - 1``, so it stays fast for every m <= 64.
    """
    m = a.m
    if not is_invertible(a):
        return False
    n = (1 << m) - 1
    if not power(a, n).is_identity():
        return False
    return all(not power(a, n // q).is_identity() for q in _prime_factors_mersenne(m))


# unipotent lower-triangular group


def _strict_lower_positions(m: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(m) for j in range(i)]


def unipotent_lower_from_counter(m: int, counter: int) -> BitMatrix:
    """Matrix number ``counter`` in the order used by :func:`enumerate_unipotent_lower`."""
    rows = [1 << i for i in range(m)]
    for k, (i, j) in enumerate(_strict_lower_positions(m)):
        if (counter >> k) & 1:
            rows[i] |= 1 << j
    return BitMatrix(m, tuple(rows))


def enumerate_unipotent_lower(m: int) -> Iterator[BitMatrix]:
    """Yield every unit-diagonal lower-triangular m x m matrix exactly once.

    The strictly-lower entries, listed row-major ((2,1), (3,1), (3,2), ...),
    are the bits of a counter running from 0 to ``2**(m(m-1)/2) - 1``; the
    first listed position is the least significant bit.  The identity comes
    first.
    """
    check_dim(m, MAX_ENUM_DIM)
    for counter in range(1 << (m * (m - 1) // 2)):
        yield unipotent_lower_from_counter(m, counter)


def random_unipotent_lower(m: int, rng) -> BitMatrix:
    """Uniform unit-diagonal lower-triangular matrix; ``rng`` is a :class:`random.Random`."""
    return BitMatrix(m, tuple((rng.getrandbits(i) if i else 0) | (1 << i) for i in range(m)))


def random_matrix(m: int, rng) -> BitMatrix:
    return BitMatrix(m, tuple(rng.getrandbits(m) for _ in range(m)))


def random_invertible(m: int, rng) -> BitMatrix:
    while True:
        a = random_matrix(m, rng)
        if is_invertible(a):
            return a
