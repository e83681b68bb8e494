import pytest
from hypothesis import given
from hypothesis import strategies as st

from satakecheck.hwrep import build_algebra
from satakecheck.invariants import (
    FAIL,
    INCONCLUSIVE,
    PASS,
    BaseModule,
    SliceModel,
    direct_sum,
    freeness_test,
    gr_base_module,
    spectral_module,
)
from satakecheck.hwrep import build_irrep
from satakecheck.poly import ONE, PolyZ, inverse_denominator_series
from satakecheck.qmult import graded_character, lusztig_q_mult
from satakecheck.rootdata import root_datum

from conftest import TYPES


def series(num, exps, top):
    return (num * inverse_denominator_series(exps, 0, top)).truncate(top)


def test_freeness_examples():
    s = freeness_test(series(ONE, [4], 24), [4], 24)
    assert (s.status, s.numerator, s.rank) == (PASS, ONE, 1)
    num = PolyZ({1: 1, 2: 1})
    s = freeness_test(series(num, [2, 2], 24), [2, 2], 24)
    assert (s.status, s.numerator, s.rank) == (PASS, num, 2)
    s = freeness_test(series(ONE, [6], 4), [6], 4)
    assert s.status == INCONCLUSIVE and s.required_cutoff == 6


def test_freeness_failures():
    bad = PolyZ({0: 1, 2: -1, 4: 1})
    assert freeness_test(series(bad, [2], 24), [2], 24).status == FAIL
    s = freeness_test(series(ONE, [2], 24), [2], 24, expected_rank=2)
    assert s.status == FAIL and s.rank == 1


def test_late_numerator_is_inconclusive_with_estimate():
    num = PolyZ({20: 1})
    s = freeness_test(series(num, [2], 24), [2], 24)
    assert s.status == INCONCLUSIVE
    assert s.required_cutoff > 24
    again = freeness_test(series(num, [2], s.required_cutoff), [2], s.required_cutoff)
    assert again.status == PASS


@given(
    st.dictionaries(st.integers(0, 8), st.integers(0, 3), max_size=4).map(PolyZ),
    st.lists(st.sampled_from([2, 4, 6]), min_size=1, max_size=3),
)
def test_certified_numerator_reproduces_the_series(num, exps):
    top = 3 * 8 + 2 * max(exps)
    s = freeness_test(series(num, exps, top), exps, top)
    assert s.status == PASS
    assert s.numerator == num and s.rank == num(1)
    assert series(s.numerator, exps, top) == s.hilbert


def test_direct_sum_of_certified_pieces():
    a = freeness_test(series(ONE, [2], 24), [2], 24)
    b = freeness_test(series(PolyZ({16: 1}), [2], 24), [2], 24, low=16)
    s = direct_sum([a, b], 2)
    assert (s.status, s.rank, s.numerator) == (PASS, 2, PolyZ({0: 1, 16: 1}))
    assert direct_sum([a, b], 3).status == FAIL


@pytest.mark.parametrize("t", TYPES)
def test_slice_model_stability(t):
    a = build_algebra(t)
    for I in a.datum.levi_subsets():
        model = SliceModel(a, a.datum.levi(I))
        assert model.check_stability()
        assert model.check_psi()


def test_a1_weight_cosets():
    sm = spectral_module("A1", (), (2,), 6)
    assert sm.total.status == PASS and sm.total.rank == 3
    ranks = {chi: s.rank for chi, s in sm.summaries.items() if s.rank}
    assert sorted(ranks.values()) == [1, 1, 1]


@pytest.mark.parametrize("t", TYPES)
def test_trivial_representation(t):
    d = root_datum(t)
    for I in d.levi_subsets():
        levi = d.levi(I)
        sm = spectral_module(t, I, (0,) * d.rank, 6)
        assert sm.total.status == PASS and sm.total.rank == 1
        assert sm.total.hilbert == inverse_denominator_series(levi.denominator_exponents, 0, 12)


@pytest.mark.parametrize("t,lam", [("A1", (2,)), ("A2", (1, 0)), ("C2", (1, 0)), ("B2", (0, 1))])
def test_principal_hilbert_series(t, lam):
    d = root_datum(t)
    full = d.levi(range(d.rank))
    sm = spectral_module(t, full, lam, 6)
    assert sm.total.status == PASS and sm.total.rank == d.weyl_dimension(lam)
    gc = graded_character(d, full, lam)
    low = gc.low_degree()
    expected = (gc * inverse_denominator_series(full.denominator_exponents, low, 12)).truncate(12)
    assert sm.total.hilbert == expected


def test_a1_principal_numerator():
    sm = spectral_module("A1", (0,), (2,), 6)
    assert sm.total.numerator == PolyZ({-2: 1, 0: 1, 2: 1})


@pytest.mark.parametrize("t,lam,I", [("A2", (1, 1), (0,)), ("C2", (1, 0), (1,)), ("B2", (1, 0), (0,))])
def test_invariant_basis_is_killed_by_every_generator(t, lam, I):
    sm = spectral_module(t, I, lam, 4, neighbors=False)
    rank = sm.model.algebra.rank
    seen = 0
    for chi in sm.summaries:
        for n in range(0, 9):
            res = sm.piece(chi, n, want_basis=True)
            for vec in res.basis:
                seen += 1
                for i in range(rank):
                    assert sm.apply_generator(i, vec) == {}
    assert seen > 0


def test_base_module_basis_is_killed():
    a = build_algebra("A2")
    bm = BaseModule(a, build_irrep(a, (1, 1)), (0, 0))
    for k in range(4):
        for vec in bm.piece(k, want_basis=True).basis:
            for i in range(a.rank):
                assert bm.apply_generator(i, vec) == {}


def test_base_module_examples():
    s = gr_base_module("A1", (2,), (0,), 8)
    assert s.status == PASS and s.numerator == PolyZ({2: 1})
    s = gr_base_module("A2", (1, 1), (0, 0), 8)
    assert s.status == PASS and s.numerator == PolyZ({2: 1, 4: 1})


@pytest.mark.parametrize("t", TYPES)
def test_base_module_degree_zero(t):
    d = root_datum(t)
    lam = d.highest_root.weight
    assert gr_base_module(t, lam, lam, 2).hilbert[0] == 1
    assert gr_base_module(t, lam, (0,) * d.rank, 2).hilbert[0] == 0


@pytest.mark.parametrize("t", TYPES)
@given(data=st.data())
def test_base_module_matches_the_q_analog(t, data):
    d = root_datum(t)
    lam = data.draw(st.sampled_from(d.dominant_weights(4)))
    mu = data.draw(st.sampled_from(d.dominant_below(lam)))
    s = gr_base_module(t, lam, mu, 8)
    assert s.status == PASS
    assert s.numerator == lusztig_q_mult(d, lam, mu).subs_power(2)


@pytest.mark.parametrize("t", ("A1", "A2", "C2"))
@given(data=st.data())
def test_coset_ranks_add_up(t, data):
    d = root_datum(t)
    lam = data.draw(st.sampled_from(d.dominant_weights(3)))
    I = data.draw(st.sampled_from(d.levi_subsets()))
    sm = spectral_module(t, I, lam, 6)
    assert sm.total.status == PASS
    assert sum(s.rank for s in sm.summaries.values()) == d.weyl_dimension(lam)
    for chi, s in sm.summaries.items():
        assert s.rank == sm.expected[chi]
