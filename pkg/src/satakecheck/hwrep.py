"""Chevalley basis and irreducible highest-weight modules over the rationals.

``L(lam)`` is built one weight space at a time, top down.  A candidate
spanning set of ``L(lam)_nu`` is the formal span of ``f_j w`` for basis
vectors ``w`` of the weight spaces ``nu + alpha_j``.  Since ``nu != lam``, a
vector of ``L(lam)_nu`` is zero exactly when every ``e_i`` kills it, so the
weight space is the image of that span under the stacked map
``x -> (e_1 x, ..., e_r x)``.  The ``e_i`` of a formal vector is known from
``e_i f_j = f_j e_i + delta_ij h_i`` and the higher weight spaces already
built.  This is the quotient of the Verma module by the radical of its
contravariant form.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Sequence

from . import linalg
from .rootdata import LeviDatum, RootDatum, Weight, pairing, root_datum

Dense = list[list[Fraction]]

CACHE_VERSION = "irrep-1"
DEFAULT_DEPTH_BOUND = 40


class DepthBoundExceeded(RuntimeError):
    def __init__(self, lam, bound):
        super().__init__(f"highest weight {lam} exceeds the depth bound {bound}")
        self.lam = lam
        self.bound = bound


def _zeros(r: int, c: int) -> Dense:
    return [[Fraction(0)] * c for _ in range(r)]


def _matvec(m: Dense, v: Sequence[Fraction]) -> list[Fraction]:
    return [sum((a * b for a, b in zip(row, v) if a), Fraction(0)) for row in m]


def matmul(a: Dense, b: Dense) -> Dense:
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = _zeros(n, m)
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            x = ai[t]
            if x:
                bt = b[t]
                for j in range(m):
                    if bt[j]:
                        oi[j] += x * bt[j]
    return out


def commutator(a: Dense, b: Dense) -> Dense:
    ab, ba = matmul(a, b), matmul(b, a)
    return [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(ab, ba)]


def mat_lincomb(coeffs: Sequence[Fraction], mats: Sequence[Dense]) -> Dense:
    n = len(mats[0])
    m = len(mats[0][0]) if n else 0
    out = _zeros(n, m)
    for c, M in zip(coeffs, mats):
        if not c:
            continue
        for i in range(n):
            for j in range(m):
                if M[i][j]:
                    out[i][j] += c * M[i][j]
    return out


@dataclass
class HWModule:
    """Weight-space model of L(lam).

    ``e[i]`` and ``f[i]`` are dense matrices in the global basis, which lists
    weight spaces by depth below ``lam`` and then lexicographically.
    """

    datum: RootDatum
    lam: Weight
    weights: list[Weight]
    dims: dict[Weight, int]
    offset: dict[Weight, int]
    labels: list[str]
    words: list[tuple[int, ...]]
    e: list[Dense]
    f: list[Dense]

    @property
    def dim(self) -> int:
        return len(self.labels)

    @cached_property
    def basis_weights(self) -> list[Weight]:
        out = []
        for nu in self.weights:
            out.extend([nu] * self.dims[nu])
        return out

    def h(self, i: int) -> Dense:
        n = self.dim
        m = _zeros(n, n)
        for k, nu in enumerate(self.basis_weights):
            m[k][k] = Fraction(nu[i])
        return m

    @cached_property
    def integral(self) -> bool:
        return all(x.denominator == 1 for M in self.e + self.f for row in M for x in row)

    def highest_vector(self) -> list[Fraction]:
        v = [Fraction(0)] * self.dim
        v[self.offset[self.lam]] = Fraction(1)
        return v

    def apply_word(self, word: Sequence[int], v: Sequence[Fraction], raising: bool = False) -> list[Fraction]:
        """Apply f_{w1} f_{w2} ... (rightmost first) or the e's when ``raising``."""
        mats = self.e if raising else self.f
        out = list(v)
        for j in reversed(word):
            out = _matvec(mats[j], out)
        return out

    def column_sparse(self, M: Dense) -> list[list[tuple[int, Fraction]]]:
        cols: list[list[tuple[int, Fraction]]] = [[] for _ in range(self.dim)]
        for i, row in enumerate(M):
            for j, x in enumerate(row):
                if x:
                    cols[j].append((i, x))
        return cols


def build_irrep_from_datum(
    datum: RootDatum, lam: Sequence[int], depth_bound: int = DEFAULT_DEPTH_BOUND
) -> HWModule:
    lam = tuple(lam)
    r = datum.rank
    if not datum.is_dominant(lam):
        raise ValueError(f"{lam} is not dominant")
    if pairing(lam, datum.two_rho_check) > depth_bound:
        raise DepthBoundExceeded(lam, depth_bound)
    alpha = datum.simple_roots

    def up(nu, i):
        return tuple(a + b for a, b in zip(nu, alpha[i]))

    dims: dict[Weight, int] = {lam: 1}
    words: dict[Weight, list[tuple[int, ...]]] = {lam: [()]}
    # E[i][nu]: L_nu -> L_{nu+alpha_i};  F[j][nu]: L_{nu+alpha_j} -> L_nu
    E: list[dict[Weight, Dense]] = [dict() for _ in range(r)]
    F: list[dict[Weight, Dense]] = [dict() for _ in range(r)]
    for i in range(r):
        E[i][lam] = []
    layer = [lam]
    order = [lam]
    depth = 0
    while layer:
        depth += 1
        cands = sorted({tuple(a - b for a, b in zip(mu, alpha[j])) for mu in layer for j in range(r)}, reverse=True)
        new_layer = []
        for nu in cands:
            targets = [i for i in range(r) if up(nu, i) in dims]
            offs = {}
            tot = 0
            for i in targets:
                offs[i] = tot
                tot += dims[up(nu, i)]
            formal = [(j, k) for j in targets for k in range(dims[up(nu, j)])]
            images = []
            for j, k in formal:
                src = up(nu, j)
                vec = [Fraction(0)] * tot
                for i in targets:
                    tgt = up(nu, i)
                    block = [Fraction(0)] * dims[tgt]
                    top = up(src, i)
                    if top in dims:
                        u = [row[k] for row in E[i][src]]
                        Fj = F[j].get(tgt)
                        if Fj is not None:
                            block = _matvec(Fj, u)
                    if i == j:
                        block[k] += src[j]
                    vec[offs[i] : offs[i] + dims[tgt]] = block
                images.append(vec)
            piv: list[int] = []
            chosen: list[list[Fraction]] = []
            for idx, vec in enumerate(images):
                if not any(vec):
                    continue
                if linalg.rank(chosen + [vec]) > len(chosen):
                    chosen.append(vec)
                    piv.append(idx)
            d = len(piv)
            if d == 0:
                continue
            dims[nu] = d
            words[nu] = [(formal[p][0],) + words[up(nu, formal[p][0])][formal[p][1]] for p in piv]
            for j in targets:
                src = up(nu, j)
                Mj = _zeros(d, dims[src])
                for k in range(dims[src]):
                    coeffs = linalg.express(chosen, images[formal.index((j, k))])
                    if coeffs is None:
                        raise AssertionError("formal image outside the chosen span")
                    for p in range(d):
                        Mj[p][k] = coeffs[p]
                F[j][nu] = Mj
            for i in range(r):
                if i in targets:
                    tgt = up(nu, i)
                    Mi = _zeros(dims[tgt], d)
                    for p in range(d):
                        for a in range(dims[tgt]):
                            Mi[a][p] = chosen[p][offs[i] + a]
                    E[i][nu] = Mi
                else:
                    E[i][nu] = []
            new_layer.append(nu)
            order.append(nu)
        layer = new_layer
        if depth > depth_bound + 1:
            raise DepthBoundExceeded(lam, depth_bound)
    offset = {}
    tot = 0
    for nu in order:
        offset[nu] = tot
        tot += dims[nu]
    n = tot
    e_glob = [_zeros(n, n) for _ in range(r)]
    f_glob = [_zeros(n, n) for _ in range(r)]
    for i in range(r):
        for nu in order:
            tgt = up(nu, i)
            if tgt in dims and E[i][nu]:
                for a in range(dims[tgt]):
                    for p in range(dims[nu]):
                        e_glob[i][offset[tgt] + a][offset[nu] + p] = E[i][nu][a][p]
            if nu in F[i]:
                src = up(nu, i)
                for p in range(dims[nu]):
                    for k in range(dims[src]):
                        f_glob[i][offset[nu] + p][offset[src] + k] = F[i][nu][p][k]
    all_words = [w for nu in order for w in words[nu]]
    labels = ["".join(f"f{j + 1}" for j in w) + ("·" if w else "") + "v" for w in all_words]
    return HWModule(datum, lam, order, dims, offset, labels, all_words, e_glob, f_glob)


# ---------------------------------------------------------------------------
# Chevalley basis


@dataclass
class ChevalleyAlgebra:
    """Chevalley basis e_b (b > 0), h_i, f_b with integer structure constants.

    Basis order: e_b by height then lex, then h_1..h_r, then f_b in the same
    root order.  Root vectors are defined by e_b = [e_i, e_c]/(p+1) with i the
    smallest simple index such that c = b - alpha_i is a root and p the
    largest integer with c - p alpha_i a root; so N_{alpha_i, c} = p + 1 > 0
    on these extraspecial pairs.  f_b = -[f_i, f_c]/(p+1), which makes
    [e_b, f_b] the coroot h_b.
    """

    datum: RootDatum
    recipe: dict[int, tuple[int, int, int]]  # root index -> (i, gamma index, p + 1)
    table: dict[tuple[int, int], dict[int, Fraction]]
    basis_weights: list[Weight]
    names: list[str]

    @property
    def npos(self) -> int:
        return self.datum.n_positive

    @property
    def rank(self) -> int:
        return self.datum.rank

    @property
    def dim(self) -> int:
        return 2 * self.npos + self.rank

    def e_index(self, k: int) -> int:
        return k

    def h_index(self, i: int) -> int:
        return self.npos + i

    def f_index(self, k: int) -> int:
        return self.npos + self.rank + k

    @property
    def borel_indices(self) -> list[int]:
        """Basis of b: the h_i then the e_b (height then lex)."""
        return [self.h_index(i) for i in range(self.rank)] + [self.e_index(k) for k in range(self.npos)]

    def vector(self, coeffs: dict[int, Fraction] | None = None) -> list[Fraction]:
        v = [Fraction(0)] * self.dim
        for k, c in (coeffs or {}).items():
            v[k] += Fraction(c)
        return v

    def bracket(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> list[Fraction]:
        out = [Fraction(0)] * self.dim
        nx = [(a, c) for a, c in enumerate(x) if c]
        ny = [(b, c) for b, c in enumerate(y) if c]
        for a, ca in nx:
            for b, cb in ny:
                for k, v in self.table.get((a, b), {}).items():
                    out[k] += ca * cb * v
        return out

    def ad_matrix(self, x: Sequence[Fraction]) -> Dense:
        """Matrix of ad_x: column b is [x, basis_b]."""
        cols = [self.bracket(x, self.vector({b: 1})) for b in range(self.dim)]
        return [[cols[b][a] for b in range(self.dim)] for a in range(self.dim)]

    def structure_constant(self, a: int, b: int) -> int:
        """N with [e_a, e_b] = N e_{a+b} (zero if a+b is not a root)."""
        d = self.datum
        s = tuple(x + y for x, y in zip(d.roots[a].weight, d.roots[b].weight))
        k = d.root_index.get(s)
        if k is None:
            return 0
        ia = self.e_index(a) if a < self.npos else self.f_index(a - self.npos)
        ib = self.e_index(b) if b < self.npos else self.f_index(b - self.npos)
        ik = self.e_index(k) if k < self.npos else self.f_index(k - self.npos)
        v = self.table.get((ia, ib), {}).get(ik, Fraction(0))
        if v.denominator != 1:
            raise AssertionError("non-integral structure constant")
        return int(v)

    def rep_matrices(self, m: HWModule) -> list[Dense]:
        """Matrices of every basis element acting on ``m``, via the same recipe."""
        npos, r = self.npos, self.rank
        E: list[Dense | None] = [None] * npos
        Fm: list[Dense | None] = [None] * npos
        d = self.datum
        for i in range(r):
            k = d.root_index[d.simple_roots[i]]
            E[k] = m.e[i]
            Fm[k] = m.f[i]
        for k in range(npos):
            if E[k] is not None:
                continue
            i, g, p1 = self.recipe[k]
            ks = d.root_index[d.simple_roots[i]]
            E[k] = [[x / p1 for x in row] for row in commutator(E[ks], E[g])]
            Fm[k] = [[-x / p1 for x in row] for row in commutator(Fm[ks], Fm[g])]
        H = [commutator(m.e[i], m.f[i]) for i in range(r)]
        return list(E) + H + list(Fm)

    def rep_of(self, mats: list[Dense], x: Sequence[Fraction]) -> Dense:
        idx = [k for k, c in enumerate(x) if c]
        if not idx:
            n = len(mats[0])
            return _zeros(n, n)
        return mat_lincomb([x[k] for k in idx], [mats[k] for k in idx])

    def lie_cartan(self, t: Sequence) -> list[Fraction]:
        """The Cartan element sum_k t_k h_k."""
        return self.vector({self.h_index(k): Fraction(c) for k, c in enumerate(t)})

    def e_simple(self, i: int) -> int:
        return self.e_index(self.datum.root_index[self.datum.simple_roots[i]])

    def f_simple(self, i: int) -> int:
        return self.f_index(self.datum.root_index[self.datum.simple_roots[i]])

    def jacobi_violations(self) -> int:
        n = self.dim
        unit = [self.vector({a: 1}) for a in range(n)]
        bad = 0
        for a in range(n):
            for b in range(a + 1, n):
                bc = self.bracket(unit[a], unit[b])
                for c in range(b + 1, n):
                    t1 = self.bracket(unit[c], bc)
                    t2 = self.bracket(unit[a], self.bracket(unit[b], unit[c]))
                    t3 = self.bracket(unit[b], self.bracket(unit[c], unit[a]))
                    if any(x + y + z for x, y, z in zip(t1, t2, t3)):
                        bad += 1
        return bad


class JacobiFailure(RuntimeError):
    pass


def build_algebra(datum: RootDatum | str) -> ChevalleyAlgebra:
    if isinstance(datum, str):
        datum = root_datum(datum)
    key = datum.cartan_type
    if key in _ALGEBRAS:
        return _ALGEBRAS[key]
    if datum.rank > 3:
        raise ValueError("rank above 3 is not supported")
    d = datum
    npos, r = d.n_positive, d.rank
    adj = build_irrep_from_datum(d, d.highest_root.weight)
    recipe: dict[int, tuple[int, int, int]] = {}
    for k in range(npos):
        b = d.roots[k]
        if b.height == 1:
            continue
        for i in range(r):
            g = tuple(x - y for x, y in zip(b.weight, d.simple_roots[i]))
            if g in d.root_index and d.root_index[g] < npos:
                p = 0
                while tuple(x - (p + 1) * y for x, y in zip(g, d.simple_roots[i])) in d.root_index:
                    p += 1
                recipe[k] = (i, d.root_index[g], p + 1)
                break
    alg = ChevalleyAlgebra(d, recipe, {}, [], [])
    mats = alg.rep_matrices(adj)
    wts = [b.weight for b in d.positive_roots] + [(0,) * r] * r + [tuple(-x for x in b.weight) for b in d.positive_roots]
    names = [f"e{''.join(map(str, b.simple))}" for b in d.positive_roots] + [f"h{i + 1}" for i in range(r)] + [
        f"f{''.join(map(str, b.simple))}" for b in d.positive_roots
    ]
    alg.basis_weights = wts
    alg.names = names
    # [e_b, f_b] must be the coroot
    for k in range(npos):
        hb = mat_lincomb([Fraction(c) for c in d.roots[k].coweight], mats[npos : npos + r])
        if commutator(mats[alg.e_index(k)], mats[alg.f_index(k)]) != hb:
            raise JacobiFailure(f"[e_b, f_b] != h_b for root {d.roots[k].simple}")
    flat = [[x for row in M for x in row] for M in mats]
    by_weight: dict[Weight, list[int]] = {}
    for a, w in enumerate(wts):
        by_weight.setdefault(w, []).append(a)
    table: dict[tuple[int, int], dict[int, Fraction]] = {}
    for a in range(alg.dim):
        for b in range(alg.dim):
            w = tuple(x + y for x, y in zip(wts[a], wts[b]))
            C = commutator(mats[a], mats[b])
            fc = [x for row in C for x in row]
            if not any(fc):
                continue
            cand = by_weight.get(w)
            if cand is None:
                raise JacobiFailure("bracket lands outside the root decomposition")
            coeffs = linalg.express([flat[k] for k in cand], fc)
            if coeffs is None:
                raise JacobiFailure("bracket not in the span of the basis")
            table[(a, b)] = {k: c for k, c in zip(cand, coeffs) if c}
    alg.table = table
    for a, b in table:
        for c in table[(a, b)].values():
            if c.denominator != 1:
                raise JacobiFailure("non-integral structure constant")
    if alg.jacobi_violations():
        raise JacobiFailure("Jacobi identity fails")
    _ALGEBRAS[key] = alg
    return alg


_ALGEBRAS: dict[str, ChevalleyAlgebra] = {}
_IRREPS: dict[tuple[str, Weight], HWModule] = {}


def build_irrep(a: ChevalleyAlgebra | RootDatum | str, lam: Sequence[int], cache_dir=None,
                depth_bound: int = DEFAULT_DEPTH_BOUND) -> HWModule:
    datum = a.datum if isinstance(a, ChevalleyAlgebra) else (root_datum(a) if isinstance(a, str) else a)
    lam = tuple(lam)
    key = (datum.cartan_type, lam)
    if key in _IRREPS:
        return _IRREPS[key]
    if cache_dir is None:
        cache_dir = os.environ.get("SATAKECHECK_CACHE_DIR") or None
    path = None
    if cache_dir is not None:
        path = Path(cache_dir) / "irrep" / datum.cartan_type / (",".join(map(str, lam)) + ".json")
        if path.exists():
            m = _irrep_from_json(datum, json.loads(path.read_text()))
            if m is not None:
                _IRREPS[key] = m
                return m
    m = build_irrep_from_datum(datum, lam, depth_bound)
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(f".tmp{os.getpid()}")
        tmp.write_text(json.dumps(_irrep_to_json(m), sort_keys=True))
        tmp.replace(path)
    _IRREPS[key] = m
    return m


def _sparse_strings(M: Dense) -> list[list]:
    return [[i, j, str(x)] for i, row in enumerate(M) for j, x in enumerate(row) if x]


def _irrep_to_json(m: HWModule) -> dict:
    return {
        "version": CACHE_VERSION,
        "type": m.datum.cartan_type,
        "lambda": list(m.lam),
        "weights": [[list(nu), m.dims[nu]] for nu in m.weights],
        "words": [list(w) for w in m.words],
        "e": [_sparse_strings(M) for M in m.e],
        "f": [_sparse_strings(M) for M in m.f],
    }


def _irrep_from_json(datum: RootDatum, data: dict) -> HWModule | None:
    if data.get("version") != CACHE_VERSION:
        return None
    weights = [tuple(w) for w, _ in data["weights"]]
    dims = {tuple(w): d for w, d in data["weights"]}
    offset = {}
    tot = 0
    for nu in weights:
        offset[nu] = tot
        tot += dims[nu]

    def dense(entries):
        M = _zeros(tot, tot)
        for i, j, x in entries:
            M[i][j] = Fraction(x)
        return M

    words = [tuple(w) for w in data["words"]]
    labels = ["".join(f"f{j + 1}" for j in w) + ("·" if w else "") + "v" for w in words]
    return HWModule(datum, tuple(data["lambda"]), weights, dims, offset, labels, words,
                    [dense(x) for x in data["e"]], [dense(x) for x in data["f"]])


def shapovalov_gram(m: HWModule, words: Sequence[Sequence[int]]) -> Dense:
    """Contravariant form <F v, F' v> on f-words of a common weight."""
    v = m.highest_vector()
    top = m.offset[m.lam]
    vecs = [m.apply_word(w, v) for w in words]
    gram = _zeros(len(words), len(words))
    for a, wa in enumerate(words):
        for b in range(len(words)):
            # sigma(f_{a1} ... f_{ak}) = e_{ak} ... e_{a1}; apply e_{a1} first
            u = vecs[b]
            for j in wa:
                u = _matvec(m.e[j], u)
            gram[a][b] = u[top]
    return gram


def coset_decompose(m: HWModule, levi: LeviDatum) -> dict[tuple, int]:
    out: dict[tuple, int] = {}
    for nu in m.weights:
        k = levi.coset_key(nu)
        out[k] = out.get(k, 0) + m.dims[nu]
    return dict(sorted(out.items()))
