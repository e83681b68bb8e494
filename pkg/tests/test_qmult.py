import pytest
from hypothesis import given
from hypothesis import strategies as st

from satakecheck.poly import ONE, ZERO, PolyZ
from satakecheck.qmult import (
    character,
    freudenthal_mult,
    graded_character,
    kostant_partition_q,
    lusztig_q_mult,
)
from satakecheck.rootdata import root_datum

from conftest import TYPES


def brute_partitions(d, nu, depth=8):
    """Count multisets of positive roots summing to nu, by size."""
    target = tuple(d.to_simple(nu))
    roots = [b.simple for b in d.positive_roots]
    out = {}

    def rec(k, rem, n):
        if not any(rem):
            out[n] = out.get(n, 0) + 1
            return
        if k == len(roots) or n == depth:
            return
        rec(k + 1, rem, n)
        step = roots[k]
        nxt = tuple(a - b for a, b in zip(rem, step))
        if all(x >= 0 for x in nxt):
            rec(k, nxt, n + 1)

    if all(x >= 0 and x.denominator == 1 for x in target):
        rec(0, target, 0)
    return PolyZ(out)


def test_kostant_examples():
    A2, A1 = root_datum("A2"), root_datum("A1")
    assert kostant_partition_q(A2, (0, 0)) == ONE
    assert kostant_partition_q(A2, A2.highest_root.weight) == PolyZ({1: 1, 2: 1})
    assert kostant_partition_q(A1, (4,)) == PolyZ({2: 1})
    assert kostant_partition_q(A1, (-2,)) == ZERO


@pytest.mark.parametrize("t", TYPES)
@given(data=st.data())
def test_kostant_matches_enumeration(t, data):
    d = root_datum(t)
    coords = data.draw(st.tuples(*[st.integers(0, 3)] * d.rank))
    nu = d.from_simple(coords)
    assert kostant_partition_q(d, nu) == brute_partitions(d, nu)


def test_lusztig_examples():
    A1, A2 = root_datum("A1"), root_datum("A2")
    assert lusztig_q_mult(A1, (2,), (0,)) == PolyZ({1: 1})
    assert lusztig_q_mult(A2, (1, 1), (0, 0)) == PolyZ({1: 1, 2: 1})
    assert lusztig_q_mult(A2, (1, 1), (1, 1)) == ONE
    assert lusztig_q_mult(A2, (1, 0), (1, 1)) == ZERO


@pytest.mark.parametrize("t", TYPES)
def test_lusztig_at_one_is_the_multiplicity(t):
    d = root_datum(t)
    for lam in d.dominant_weights(6):
        ch = character(d, lam)
        for mu in d.dominant_below(lam):
            p = lusztig_q_mult(d, lam, mu)
            assert p.nonnegative()
            assert p(1) == ch.get(mu, 0)
        assert sum(ch.values()) == d.weyl_dimension(lam)
        assert ch[lam] == 1


@pytest.mark.parametrize("t", TYPES)
@given(data=st.data())
def test_character_is_weyl_invariant(t, data):
    d = root_datum(t)
    lam = data.draw(st.sampled_from(d.dominant_weights(6)))
    ch = character(d, lam)
    for mu, m in ch.items():
        for i in range(d.rank):
            assert ch.get(d.reflect(i, mu), 0) == m


def test_graded_character_examples():
    A1 = root_datum("A1")
    assert graded_character(A1, A1.levi(()), (2,)) == PolyZ({0: 3})
    assert graded_character(A1, A1.levi((0,)), (2,)) == PolyZ({-2: 1, 0: 1, 2: 1})


def test_freudenthal_off_support():
    assert freudenthal_mult(root_datum("A2"), (1, 1), (0, 0)) == 2
    assert freudenthal_mult(root_datum("A2"), (1, 1), (3, 0)) == 0


def test_non_dominant_lambda_rejected():
    with pytest.raises(ValueError):
        lusztig_q_mult(root_datum("A1"), (-1,), (0,))
