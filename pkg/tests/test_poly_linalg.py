from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from satakecheck import linalg
from satakecheck.poly import ONE, ZERO, PolyZ, inverse_denominator_series

laurent = st.dictionaries(st.integers(-4, 6), st.integers(-5, 5), max_size=5).map(PolyZ)


@given(laurent, laurent, laurent)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a - a == ZERO
    assert a * ONE == a


@given(laurent)
def test_no_stored_zeros_and_json_round_trip(a):
    assert all(v != 0 for v in a.coeffs.values())
    assert PolyZ.from_json(a.to_json()) == a


@given(laurent, st.integers(-3, 3))
def test_evaluation_is_exact(a, x):
    if x == 0 and a.low_degree() is not None and a.low_degree() < 0:
        return
    v = a(x)
    assert isinstance(v, (int, Fraction))
    assert v == sum(Fraction(c) * Fraction(x) ** e for e, c in a.coeffs.items())


def test_inverse_denominator_series():
    s = inverse_denominator_series([2, 2], 0, 8)
    assert s == PolyZ({0: 1, 2: 2, 4: 3, 6: 4, 8: 5})
    num = (s * PolyZ({0: 1, 2: -1}) * PolyZ({0: 1, 2: -1})).truncate(8)
    assert num == ONE


matrices = st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(st.integers(-2, 2), min_size=n, max_size=n), min_size=1, max_size=6)
)


@given(matrices)
def test_sparse_and_dense_ranks_agree(rows):
    n = len(rows[0])
    sparse = [{j: Fraction(v) for j, v in enumerate(r) if v} for r in rows]
    assert linalg.sparse_rank(sparse, n) == linalg.rank(rows)
    ker = linalg.sparse_nullspace(sparse, n)
    assert len(ker) == n - linalg.rank(rows)
    for v in ker:
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)


def test_unit_elimination_on_fractions():
    rows = [{0: Fraction(1, 2), 1: Fraction(1, 3)}, {0: Fraction(3), 1: Fraction(2)}]
    assert linalg.sparse_rank(rows, 2) == 1
    assert linalg.sparse_nullspace(rows, 2) in ([[2, -3]], [[-2, 3]])
