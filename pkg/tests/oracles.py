"""Brute-force reference implementations, independent of the package internals.

They work on plain lists of 0/1 entries and exact fractions so they share no
code path with the bit-packed routines they check.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb


def binom_mod2(n: int, k: int) -> int:
    return comb(n, k) % 2 if 0 <= k <= n else 0


def lucas_binom_mod2(n: int, k: int) -> int:
    # C(n, k) is odd iff every binary digit of k is <= the matching digit of n
    return int(k >= 0 and (k & ~n) == 0)


def mat_mul(a, b):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) % 2 for j in range(n)] for i in range(n)]


def det_mod2(a) -> int:
    """Leibniz expansion mod 2 (signs vanish in characteristic 2)."""
    n = len(a)
    total = 0
    for perm in itertools.permutations(range(n)):
        term = 1
        for i in range(n):
            term &= a[i][perm[i]]
            if not term:
                break
        total ^= term
    return total


def leading_minors_ok(a) -> bool:
    return all(det_mod2([row[:k] for row in a[:k]]) for k in range(1, len(a) + 1))


def span(vectors) -> set[tuple[int, ...]]:
    """Every F2-combination of the given 0/1 tuples."""
    if not vectors:
        return set()
    n = len(vectors[0])
    out = set()
    for coeffs in itertools.product((0, 1), repeat=len(vectors)):
        v = [0] * n
        for c, vec in zip(coeffs, vectors):
            if c:
                v = [x ^ y for x, y in zip(v, vec)]
        out.add(tuple(v))
    return out


def rank_by_span(vectors) -> int:
    if not vectors:
        return 0
    return len(span(vectors)).bit_length() - 1


def net_points_exact(mats, m):
    """Points of the digital net as Fractions, straight from the definition."""
    pts = []
    for l in range(2**m):
        digits = [(l >> k) & 1 for k in range(m)]
        point = []
        for c in mats:
            y = [sum(c[i][k] * digits[k] for k in range(m)) % 2 for i in range(m)]
            point.append(sum(Fraction(y[i], 2 ** (i + 1)) for i in range(m)))
        pts.append(tuple(point))
    return pts


def all_compositions(total, parts):
    return [d for d in itertools.product(range(total + 1), repeat=parts) if sum(d) == total]


def t_value_by_boxes(points, m, s) -> int:
    """Least t with exactly 2**t points in every elementary box of volume 2**(t-m)."""
    for t in range(m + 1):
        ok = True
        for d in all_compositions(m - t, s):
            for cell in itertools.product(*(range(2**di) for di in d)):
                count = 0
                for p in points:
                    if all(Fraction(a, 2**di) <= x < Fraction(a + 1, 2**di) for x, a, di in zip(p, cell, d)):
                        count += 1
                if count != 2**t:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return t
    raise AssertionError("unreachable")


def t_value_by_span(mats, m) -> int:
    """Rank criterion evaluated with brute-force spans over every composition."""
    s = len(mats)
    for t in range(m + 1):
        if all(
            rank_by_span([tuple(mats[i][r]) for i in range(s) for r in range(d[i])]) == m - t
            for d in all_compositions(m - t, s)
        ):
            return t
    raise AssertionError("unreachable")


def unipotent_lower_all(m):
    free = [(i, j) for i in range(m) for j in range(i)]
    for bits in itertools.product((0, 1), repeat=len(free)):
        a = [[int(i == j) for j in range(m)] for i in range(m)]
        for (i, j), b in zip(free, bits):
            a[i][j] = b
        yield a


def naive_order(a, cap):
    n = len(a)
    ident = [[int(i == j) for j in range(n)] for i in range(n)]
    cur = a
    for k in range(1, cap + 1):
        if cur == ident:
            return k
        cur = mat_mul(cur, a)
    return None
