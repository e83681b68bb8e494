import pytest
from hypothesis import given
from hypothesis import strategies as st

from satakecheck.affweyl import affine_weyl_group
from satakecheck.klpoly import KLEngine, kl_engine
from satakecheck.poly import ONE, ZERO, PolyZ
from satakecheck.rootdata import root_datum

from conftest import TYPES

Q = PolyZ({1: 1})


def elements(G, max_len=6):
    n = len(G.simple_reflections)
    return st.builds(
        lambda word, om: G.from_word(word, om),
        st.lists(st.integers(0, n - 1), max_size=max_len),
        st.sampled_from(G.length_zero),
    )


def test_r_polynomial_base_cases():
    E = kl_engine("A2")
    G = E.G
    w = G.from_word([0, 1, 2])
    assert E.r_polynomial(w, w) == ONE
    for y in G.coatoms(w):
        assert E.r_polynomial(y, w) == Q - ONE


def test_kl_base_cases():
    E = kl_engine("C2")
    G = E.G
    w = G.from_word([0, 1, 2, 1])
    assert E.kl_polynomial(w, w) == ONE
    assert all(E.kl_polynomial(y, w) == ONE for y in G.coatoms(w))


# values of the q-Kostant oracle, frozen
FROZEN = [
    ("A1", (2,), (0,), {1: 1}),
    ("A1", (8,), (0,), {4: 1}),
    ("A1", (8,), (2,), {3: 1}),
    ("A2", (1, 1), (0, 0), {1: 1, 2: 1}),
    ("A2", (2, 2), (0, 0), {2: 1, 3: 1, 4: 1}),
    ("A2", (2, 2), (1, 1), {1: 1, 2: 1}),
    ("A2", (3, 0), (0, 0), {3: 1}),
    ("C2", (2, 0), (0, 0), {1: 1, 3: 1}),
    ("C2", (0, 2), (0, 0), {2: 1, 4: 1}),
    ("C2", (1, 1), (1, 0), {1: 1, 2: 1}),
    ("B2", (0, 2), (0, 0), {1: 1, 3: 1}),
]


@pytest.mark.parametrize("t,lam,mu,coeffs", FROZEN)
def test_costalk_frozen_values(t, lam, mu, coeffs):
    assert kl_engine(t).costalk_poincare(lam, mu) == PolyZ(coeffs)


@pytest.mark.parametrize("t", TYPES)
def test_costalk_trivial_cases(t):
    E = kl_engine(t)
    d = E.datum
    for lam in d.dominant_weights(4):
        assert E.costalk_poincare(lam, lam) == ONE
    lam = d.highest_root.weight
    assert E.costalk_poincare((0,) * d.rank, lam) == ZERO


def test_costalk_is_weyl_symmetric_only_after_shearing():
    E = kl_engine("A1")
    assert E.costalk_poincare((2,), (-2,)) == Q.shift(1)
    assert E.costalk_poincare((2,), (2,)) == ONE


@pytest.mark.parametrize("t", TYPES)
@given(data=st.data())
def test_kl_coefficients_are_nonnegative_and_bounded(t, data):
    E = kl_engine(t)
    G = E.G
    w = data.draw(elements(G))
    for y in G.lower_ideal(w):
        p = E.kl_polynomial(y, w)
        assert p.nonnegative()
        assert p[0] == 1
        d = G.length(w) - G.length(y)
        assert p.degree() == 0 or 2 * p.degree() <= d - 1


@pytest.mark.parametrize("t", TYPES)
@given(data=st.data())
def test_kl_defining_identity(t, data):
    E = kl_engine(t)
    G = E.G
    w = data.draw(elements(G))
    y = data.draw(st.sampled_from(sorted(G.lower_ideal(w))))
    lhs = E.kl_polynomial(y, w).invert().shift(G.length(w) - G.length(y)) - E.kl_polynomial(y, w)
    rhs = ZERO
    for x in G.bruhat_interval(y, w).elements:
        if x != y:
            rhs = rhs + E.r_polynomial(y, x) * E.kl_polynomial(x, w)
    assert lhs == rhs


@pytest.mark.parametrize("t", TYPES)
@given(data=st.data())
def test_omega_translation_invariance(t, data):
    E = kl_engine(t)
    G = E.G
    w = data.draw(elements(G))
    y = data.draw(st.sampled_from(sorted(G.lower_ideal(w))))
    for om in G.length_zero:
        assert E.kl_polynomial(G.mul(om, y), G.mul(om, w)) == E.kl_polynomial(y, w)


def test_disk_cache_is_transparent(tmp_path):
    G = affine_weyl_group(root_datum("A2"))
    cold = KLEngine(G, tmp_path)
    lam = (2, 2)
    grid = [(0, 0), (1, 1), (3, 0), (0, 3), (2, 2)]
    first = {mu: cold.costalk_poincare(lam, mu) for mu in grid}
    assert cold.stats["disk_writes"] > 0
    warm = KLEngine(G, tmp_path)
    second = {mu: warm.costalk_poincare(lam, mu) for mu in grid}
    assert first == second
    assert warm.stats["disk_hits"] > 0 and warm.stats["computed"] == 0
    assert all(p.parts[1] == "A2" for p in (f.relative_to(tmp_path) for f in tmp_path.rglob("*.json")))
