from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from satakecheck.hwrep import build_algebra
from satakecheck.rootdata import root_datum, root_value
from satakecheck.slices import (
    WallPoint,
    centralizer_dim,
    chi_I,
    geometry,
    kostant_section,
    partial_kostant_section,
    reflect_cartan,
    regular_centralizer_fiber,
    torsor_check,
)

from conftest import TYPES

rationals = st.fractions(min_value=-6, max_value=6, max_denominator=5)
CASES = [(t, I) for t in TYPES for I in root_datum(t).levi_subsets()]


@pytest.mark.parametrize("t,I", CASES)
@given(data=st.data())
def test_section_property_on_arbitrary_values(t, I, data):
    g = geometry(t, I)
    n = len(g.chi(g.f_I))
    c = tuple(data.draw(st.lists(rationals, min_size=n, max_size=n)))
    x = partial_kostant_section(t, I, c).point
    assert chi_I(t, I, x) == c


@pytest.mark.parametrize("t,I", CASES)
def test_section_property_on_seeded_points(t, I):
    g = geometry(t, I)
    pts = g.random_points(20, seed=42)
    assert len({p.values for p in pts}) == 20
    for p in pts:
        assert g.chi(g.section(p.values)) == p.values
        for i in I:
            assert g.point_from_cartan(reflect_cartan(g.a, i, p.preimage)).values == p.values


@pytest.mark.parametrize("t", TYPES)
def test_section_kinds(t):
    d = root_datum(t)
    full = partial_kostant_section(t, range(d.rank), (1,) * d.rank)
    assert full == kostant_section(t, (1,) * d.rank)
    assert full.kind == "kostant"
    empty = partial_kostant_section(t, (), (2,) * d.rank)
    assert empty.kind == "cartan_embedding"
    assert list(empty.point) == geometry(t, ()).cartan_element((2,) * d.rank)


def test_a1_kostant_section():
    a = build_algebra("A1")
    nil = kostant_section(a, (0,)).point
    assert centralizer_dim(a, nil) == 1
    assert sum(1 for v in nil if v) == 1
    one = kostant_section(a, (1,)).point
    assert chi_I(a, (0,), one) == (1,)


@pytest.mark.parametrize("t", TYPES)
def test_centralizer_extremes(t):
    a = build_algebra(t)
    assert centralizer_dim(a, [0] * a.dim) == a.dim
    t_reg = (1, 3)[: a.rank]
    assert all(root_value(b, t_reg) for b in a.datum.roots)
    assert centralizer_dim(a, geometry(t, ()).cartan_element(t_reg)) == a.rank


def test_a1_cartan_element_is_regular():
    a = build_algebra("A1")
    assert centralizer_dim(a, a.lie_cartan((1,))) == 1


@pytest.mark.parametrize("t,r", [("A1", 1), ("A2", 2), ("C2", 2), ("B2", 2)])
@given(data=st.data())
def test_regular_centralizer_fibers(t, r, data):
    c = tuple(data.draw(st.lists(rationals, min_size=r, max_size=r)))
    assert regular_centralizer_fiber(t, c) == r


def test_a1_torsor_determinant_is_the_root_value():
    g = geometry("A1", ())
    p = g.point_from_cartan((Fraction(3, 2),))
    rep = torsor_check("A1", (), p)
    assert rep.status == "PASS"
    assert abs(rep.determinant) == abs(root_value(root_datum("A1").positive_roots[0], p.preimage))


@pytest.mark.parametrize("t,I", CASES)
def test_torsor_at_anti_generic_points(t, I):
    g = geometry(t, I)
    for p in g.random_points(20, seed=7):
        rep = torsor_check(t, I, p)
        assert rep.status == "PASS" and rep.stabilizer_dim == 0


@pytest.mark.parametrize("t,I", [c for c in CASES if len(c[1]) < root_datum(c[0]).rank])
def test_wall_points_raise(t, I):
    g = geometry(t, I)
    for b in g.levi.outside_positive:
        p = g.wall_point(b, seed=3)
        assert not p.g_generic
        with pytest.raises(WallPoint) as exc:
            torsor_check(t, I, p)
        assert exc.value.root in p.vanishing_roots()
