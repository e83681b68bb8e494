import pytest
from hypothesis import given
from hypothesis import strategies as st

from satakecheck.affweyl import affine_weyl_group

from conftest import TYPES


def elements(G, max_len=5):
    """Words in the simple reflections times a length-zero element."""
    n = len(G.simple_reflections)
    return st.builds(
        lambda word, om: G.from_word(word, om),
        st.lists(st.integers(0, n - 1), max_size=max_len),
        st.sampled_from(G.length_zero),
    )


def test_identity_has_length_zero():
    for t in TYPES:
        G = affine_weyl_group(t)
        assert G.length(G.identity) == 0


@pytest.mark.parametrize("t,mu,expected", [("A1", (0,), 1), ("A1", (2,), 3), ("A2", (1, 1), 7), ("A2", (0, 0), 3)])
def test_double_coset_maxima(t, mu, expected):
    G = affine_weyl_group(t)
    n = G.double_coset_max(mu)
    assert G.length(n) == expected


def test_double_coset_max_of_zero_is_w0():
    for t in TYPES:
        G = affine_weyl_group(t)
        n = G.double_coset_max((0,) * G.rank)
        assert n.translation == (0,) * G.rank
        assert G.length(n) == G.datum.n_positive


@pytest.mark.parametrize("t", TYPES)
def test_length_matches_breadth_first_depth(t):
    G = affine_weyl_group(t)
    for om in G.length_zero:
        ball = G.elements_up_to(5, om)
        depth = {}
        frontier = [om]
        depth[om] = 0
        for k in range(1, 6):
            nxt = []
            for x in frontier:
                for s in G.simple_reflections:
                    y = G.mul(x, s)
                    if y not in depth:
                        depth[y] = k
                        nxt.append(y)
            frontier = nxt
        assert set(ball) == set(depth)
        assert all(G.length(x) == depth[x] for x in ball)


@pytest.mark.parametrize("t", TYPES)
def test_simple_reflections_are_involutions(t):
    G = affine_weyl_group(t)
    for s in G.simple_reflections:
        assert G.mul(s, s) == G.identity
        assert G.length(s) == 1


@pytest.mark.parametrize("t", TYPES)
@given(data=st.data())
def test_inverse_and_subadditivity(t, data):
    G = affine_weyl_group(t)
    x, y, z = (data.draw(elements(G)) for _ in range(3))
    assert G.length(G.inv(x)) == G.length(x)
    assert G.mul(x, G.inv(x)) == G.identity
    assert G.length(G.mul(x, y)) <= G.length(x) + G.length(y)
    assert G.mul(G.mul(x, y), z) == G.mul(x, G.mul(y, z))


@pytest.mark.parametrize("t", TYPES)
@given(data=st.data())
def test_omega_split_reassembles(t, data):
    G = affine_weyl_group(t)
    x = data.draw(elements(G, 7))
    om, word = G.omega_split(x)
    assert G.length(om) == 0
    assert len(word) == G.length(x)
    assert G.from_word(word, om) == x


@pytest.mark.parametrize("t", TYPES)
@given(data=st.data())
def test_deodhar_recursion_agrees_with_subwords(t, data):
    G = affine_weyl_group(t)
    w = data.draw(elements(G, 6))
    below = G.lower_ideal(w)
    for y in G.elements_up_to(G.length(w), G.omega(w)):
        assert G.bruhat_le(y, w) == (y in below)


@pytest.mark.parametrize("t", TYPES)
@given(data=st.data())
def test_intervals_are_graded(t, data):
    G = affine_weyl_group(t)
    w = data.draw(elements(G, 6))
    y = data.draw(st.sampled_from(sorted(G.lower_ideal(w))))
    iv = G.bruhat_interval(y, w)
    assert iv.elements[0] == y and iv.elements[-1] == w
    for lo, hi in iv.covers:
        assert G.length(iv.elements[hi]) == G.length(iv.elements[lo]) + 1


def test_singleton_interval():
    G = affine_weyl_group("A2")
    x = G.from_word([0, 1, 2])
    assert G.bruhat_interval(x, x).elements == [x]


def test_different_components_are_incomparable():
    G = affine_weyl_group("A1")
    a, b = G.length_zero
    assert not G.bruhat_le(a, b)
    assert len(G.bruhat_interval(a, b)) == 0
