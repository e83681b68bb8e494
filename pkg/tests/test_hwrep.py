import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from satakecheck import hwrep
from satakecheck.hwrep import build_algebra, build_irrep, commutator, coset_decompose, shapovalov_gram
from satakecheck.linalg import rank
from satakecheck.qmult import character
from satakecheck.rootdata import pairing, root_datum

from conftest import TYPES


@pytest.mark.parametrize("t,dim", [("A1", 3), ("A2", 8), ("B2", 10), ("C2", 10)])
def test_algebra_dimension_and_jacobi(t, dim):
    a = build_algebra(t)
    assert a.dim == dim
    assert a.jacobi_violations() == 0


@pytest.mark.parametrize("t", TYPES)
def test_cartan_acts_by_root_pairing(t):
    a = build_algebra(t)
    d = a.datum
    for i in range(d.rank):
        h = a.vector({a.h_index(i): 1})
        for k, b in enumerate(d.positive_roots):
            e = a.vector({a.e_index(k): 1})
            assert a.bracket(h, e) == [pairing(d.simple_coroots[i], b.weight) * x for x in e]


@pytest.mark.parametrize("t", TYPES)
def test_structure_constants_are_integers(t):
    a = build_algebra(t)
    for x, y in itertools.product(range(a.dim), repeat=2):
        for v in a.table.get((x, y), {}).values():
            assert Fraction(v).denominator == 1


@pytest.mark.parametrize("t,lam,dim", [("A1", (1,), 2), ("A2", (1, 1), 8), ("C2", (1, 0), 4), ("B2", (0, 1), 4)])
def test_irrep_dimensions(t, lam, dim):
    assert build_irrep(t, lam).dim == dim


def test_adjoint_zero_weight_space():
    m = build_irrep("A2", (1, 1))
    assert m.dims[(0, 0)] == 2


@pytest.mark.parametrize("t", TYPES)
def test_weight_spaces_match_freudenthal(t):
    d = root_datum(t)
    for lam in d.dominant_weights(4):
        m = build_irrep(t, lam)
        assert m.dims == {nu: k for nu, k in character(d, lam).items() if k}
        assert m.dim == d.weyl_dimension(lam)


def _relations_hold(m):
    r = m.datum.rank
    C = m.datum.cartan_matrix
    for i, j in itertools.product(range(r), repeat=2):
        br = commutator(m.e[i], m.f[j])
        target = m.h(i) if i == j else [[0] * m.dim for _ in range(m.dim)]
        if br != target:
            return False
        # [h_i, e_j] = a_ji e_j with a_ji = <alpha_i^vee, alpha_j>
        lhs = commutator(m.h(i), m.e[j])
        if lhs != [[C[j][i] * x for x in row] for row in m.e[j]]:
            return False
    return True


@pytest.mark.parametrize("t", TYPES)
@given(data=st.data())
def test_defining_relations(t, data):
    d = root_datum(t)
    lam = data.draw(st.sampled_from(d.dominant_weights(4)))
    assert _relations_hold(build_irrep(t, lam))


@pytest.mark.parametrize("t", TYPES)
@given(data=st.data())
def test_highest_line_is_killed_by_raising(t, data):
    d = root_datum(t)
    lam = data.draw(st.sampled_from(d.dominant_weights(5)))
    m = build_irrep(t, lam)
    assert m.dims[lam] == 1
    v = m.highest_vector()
    for i in range(d.rank):
        assert not any(m.apply_word([i], v, raising=True))


@pytest.mark.parametrize("t", TYPES)
@given(data=st.data())
def test_shapovalov_rank_is_the_multiplicity(t, data):
    d = root_datum(t)
    lam = data.draw(st.sampled_from(d.dominant_weights(4)))
    m = build_irrep(t, lam)
    nu = data.draw(st.sampled_from(m.weights))
    depth = [int(x) for x in d.to_simple(tuple(a - b for a, b in zip(lam, nu)))]
    letters = [j for j, k in enumerate(depth) for _ in range(k)]
    words = sorted(set(itertools.permutations(letters)))
    assert rank(shapovalov_gram(m, words)) == m.dims[nu]


def test_coset_decompositions():
    d = root_datum("A2")
    m = build_irrep("A2", (1, 1))
    parts = coset_decompose(m, d.levi((0,)))
    assert len(parts) == 3 and sum(parts.values()) == 8
    assert list(coset_decompose(m, d.levi((0, 1))).values()) == [8]
    assert coset_decompose(m, d.levi(())) == {d.levi(()).coset_key(nu): k for nu, k in m.dims.items()}


def test_disk_cache_round_trip(tmp_path, monkeypatch):
    monkeypatch.setattr(hwrep, "_IRREPS", {})
    cold = build_irrep("C2", (1, 1), cache_dir=tmp_path)
    files = list((tmp_path / "irrep" / "C2").glob("*.json"))
    assert [f.name for f in files] == ["1,1.json"]
    monkeypatch.setattr(hwrep, "_IRREPS", {})
    warm = build_irrep("C2", (1, 1), cache_dir=tmp_path)
    assert warm is not cold
    assert (warm.weights, warm.dims, warm.e, warm.f) == (cold.weights, cold.dims, cold.e, cold.f)


def test_depth_bound():
    with pytest.raises(hwrep.DepthBoundExceeded):
        hwrep.build_irrep_from_datum(root_datum("A2"), (4, 4), depth_bound=3)
