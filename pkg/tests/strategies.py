from hypothesis import strategies as st

from gf2nets.gf2 import BitMatrix


def matrices(min_m=1, max_m=8):
    return st.integers(min_m, max_m).flatmap(
        lambda m: st.lists(st.integers(0, 2**m - 1), min_size=m, max_size=m).map(
            lambda rows: BitMatrix(m, tuple(rows))
        )
    )


def unipotent_lowers(m):
    return st.tuples(*(st.integers(0, 2**i - 1) for i in range(m))).map(
        lambda low: BitMatrix(m, tuple(low[i] | (1 << i) for i in range(m)))
    )
