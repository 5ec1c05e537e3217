"""Exit criteria.  Run with ``pytest tests/test_acceptance.py``; a PASS/FAIL
line per criterion is printed in the terminal summary."""

import itertools
import random
import time

import pytest

from gf2nets.characterization import (
    characterize_2d,
    conjugacy_orbit,
    exhaustive_search_t0,
    pj,
    pj_identities_check,
    subspace_dimension_probe,
)
from gf2nets.cud import RecurrenceSpec, tuple_set_equals_net
from gf2nets.errors import NotT0Error
from gf2nets.gf2 import (
    BitMatrix,
    BitVector,
    antidiag_j,
    identity,
    is_primitive,
    pascal_p,
    random_invertible,
    random_matrix,
    random_unipotent_lower,
)
from gf2nets.net import NetSpec, generate_points, t_value_geometric, t_value_rank

criterion = pytest.mark.criterion


@pytest.fixture(scope="module")
def small_reports():
    start = time.perf_counter()
    reports = {m: exhaustive_search_t0(m) for m in range(1, 5)}
    return reports, time.perf_counter() - start


@pytest.fixture(scope="module")
def report_m5():
    start = time.perf_counter()
    report = exhaustive_search_t0(5)
    return report, time.perf_counter() - start


def _cubes_are_identity(report):
    i = identity(report.m)
    return all(b @ b @ b == i for b in report.found)


@criterion(1, "search set equals L P J L^-1 orbit, B^3 = I (m = 1..5)")
def test_c1_theorem_small(small_reports):
    reports, elapsed = small_reports
    for m, r in reports.items():
        assert r.equal_sets, m
        assert r.all_cubes_identity and _cubes_are_identity(r), m
        assert r.candidates_scanned == 2 ** (m * m)
    assert elapsed < 5.0


@criterion(1, "search set equals L P J L^-1 orbit, B^3 = I (m = 1..5)")
def test_c1_theorem_m5(report_m5):
    r, elapsed = report_m5
    assert r.candidates_scanned == 2**25
    assert r.equal_sets
    assert r.all_cubes_identity and _cubes_are_identity(r)
    assert elapsed < 15 * 60


@criterion(2, "primitive members: 2 at m = 2, none at m = 3, 4, 5")
def test_c2_non_primitivity(small_reports, report_m5):
    reports, _ = small_reports
    assert len(reports[2].primitive_members) == 2
    assert reports[3].primitive_members == []
    assert reports[4].primitive_members == []
    assert report_m5[0].primitive_members == []


@criterion(3, "P^2 = J^2 = (PJ)^3 = I for m = 1..64")
def test_c3_identities():
    start = time.perf_counter()
    assert all(pj_identities_check(m) for m in range(1, 65))
    assert time.perf_counter() - start < 1.0


@criterion(4, "t(I,P,J) = t(I,PJ,(PJ)^2) = 0, rank m <= 32, geometric m <= 10")
def test_c4_explicit_nets():
    start = time.perf_counter()
    for m in range(1, 33):
        i, p, j = identity(m), pascal_p(m), antidiag_j(m)
        b = pj(m)
        for spec in (NetSpec.of(i, p, j), NetSpec.of(i, b, b @ b)):
            assert t_value_rank(spec).t == 0, m
            if m <= 10:
                assert t_value_geometric(generate_points(spec)) == 0, m
    assert time.perf_counter() - start < 30.0


@criterion(5, "rank t-value equals geometric t-value on 10^4 random specs")
def test_c5_oracle_equivalence():
    rng = random.Random(20240501)
    mismatches = []
    for n in range(10_000):
        m = rng.randint(1, 6)
        if n % 4 == 0:
            b = random_matrix(m, rng)
            mats = [identity(m), b, b @ b][: rng.randint(1, 3)]
        else:
            mats = [random_matrix(m, rng) for _ in range(rng.randint(1, 4))]
        spec = NetSpec(m, tuple(mats))
        if t_value_rank(spec).t != t_value_geometric(generate_points(spec)):
            mismatches.append(spec)
    assert mismatches == []


@criterion(6, "t(C_1..C_s) = t(L_1 C_1 G, ..., L_s C_s G), 1000 draws per m = 2..6")
def test_c6_invariance():
    rng = random.Random(6)
    mismatches = 0
    for m in range(2, 7):
        for _ in range(1000):
            s = rng.randint(1, 4)
            if rng.random() < 0.5:
                b = random_matrix(m, rng)
                mats = [identity(m), b, b @ b, b @ b @ b][:s]
            else:
                mats = [random_matrix(m, rng) for _ in range(s)]
            spec = NetSpec(m, tuple(mats))
            lefts = [random_unipotent_lower(m, rng) for _ in range(s)]
            g = random_invertible(m, rng)
            if t_value_rank(spec).t != t_value_rank(spec.transformed(lefts, g)).t:
                mismatches += 1
    assert mismatches == 0


def _check_2d(b):
    m = b.m
    t0 = t_value_rank(NetSpec.of(identity(m), b)).t == 0
    try:
        l1, l2 = characterize_2d(b)
    except NotT0Error:
        return not t0
    return t0 and l1 @ antidiag_j(m) @ l2 == b


@criterion(7, "B = L1 J L2 found iff t(I,B) = 0 (exhaustive m <= 3, 10^4 random m <= 6)")
def test_c7_characterization_2d():
    for m in (1, 2, 3):
        for key in range(2 ** (m * m)):
            assert _check_2d(BitMatrix.from_key(m, key))
    rng = random.Random(7)
    for _ in range(10_000):
        m = rng.randint(1, 6)
        assert _check_2d(random_matrix(m, rng))


def _random_t0_triple(m, rng):
    base = rng.choice([
        (identity(m), pascal_p(m), antidiag_j(m)),
        (identity(m), pj(m), pj(m) @ pj(m)),
    ])
    base = list(rng.choice(list(itertools.permutations(base))))
    lefts = [random_unipotent_lower(m, rng) for _ in range(3)]
    g = random_invertible(m, rng)
    return [l @ c @ g for l, c in zip(lefts, base)]


@criterion(8, "subspace probes: dim of intersection = m - k, outside count = 2^j (m = 3..8)")
def test_c8_subspace_probes():
    rng = random.Random(8)
    for m in range(3, 9):
        for _ in range(200):
            a, b, c = _random_t0_triple(m, rng)
            j = rng.randint(0, m - 1)
            k = rng.randint(1, m - j)
            indices = sorted(rng.sample(range(m - j), k))
            pr = subspace_dimension_probe(a, b, c, j, indices)
            assert all(d == m - 1 for d in pr.v_dims)
            assert pr.intersection_dim == m - k
            assert pr.complement_count == 2**j


@criterion(9, "overlapping tuples plus origin equal the (I,B,..,B^(s-1)) net, every primitive B")
def test_c9_tuple_net_identity():
    for m in (2, 3, 4):
        prims = [b for b in (BitMatrix.from_key(m, k) for k in range(2 ** (m * m))) if is_primitive(b)]
        assert prims
        seed = BitVector.unit(m, 1)
        for b in prims:
            for s in (1, 2, 3):
                assert tuple_set_equals_net(RecurrenceSpec(b, seed), s)


@criterion(10, "t(I,B,B^2,B^3) >= 1 for every orbit member, m = 2..5")
def test_c10_extremality():
    for m in range(2, 6):
        for b in conjugacy_orbit(m):
            b2 = b @ b
            assert t_value_rank(NetSpec.of(identity(m), b, b2, b2 @ b)).t >= 1
