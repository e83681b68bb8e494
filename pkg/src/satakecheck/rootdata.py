"""Pinned root data of small simply connected groups.

Weights are integer tuples in the fundamental-weight basis.  Coweights of the
simply connected torus form the coroot lattice and are written in the basis
of simple coroots, so the pairing between the two is the dot product.
Simple roots are the rows of the Cartan matrix.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

Weight = tuple[int, ...]
Coweight = tuple[int, ...]

# cartan[i][j] = <alpha_j^vee, alpha_i>
_CARTAN = {
    "A1": ((2,),),
    "A2": ((2, -1), (-1, 2)),
    "B2": ((2, -2), (-1, 2)),
    "C2": ((2, -1), (-2, 2)),
    "G2": ((2, -1), (-3, 2)),
}

SUPPORTED_TYPES = ("A1", "A2", "B2", "C2")
OPTIONAL_TYPES = ("G2",)


def pairing(x: Sequence[int], y: Sequence[int]):
    return sum(a * b for a, b in zip(x, y))


def _add(x, y):
    return tuple(a + b for a, b in zip(x, y))


def _sub(x, y):
    return tuple(a - b for a, b in zip(x, y))


def _scale(k, x):
    return tuple(k * a for a in x)


@dataclass(frozen=True)
class Root:
    """A root together with its coroot, in several coordinate systems."""

    weight: Weight  # fundamental-weight coordinates
    simple: Weight  # coordinates in the simple roots
    coweight: Coweight  # the coroot, in simple-coroot coordinates

    @property
    def positive(self) -> bool:
        return sum(self.simple) > 0

    @property
    def height(self) -> int:
        return sum(self.simple)


class WeylGroup:
    """Finite Weyl group, enumerated once.

    Elements are integer indices.  Each element stores its matrix on weight
    coordinates, the permutation it induces on the root list and a reduced
    word in shortlex order.
    """

    def __init__(self, datum: "RootDatum"):
        r = datum.rank
        C = datum.cartan_matrix
        self.rank = r
        self._roots = datum.roots
        root_index = {b.weight: k for k, b in enumerate(self._roots)}
        ident = tuple(tuple(int(i == j) for j in range(r)) for i in range(r))
        gens = []
        for i in range(r):
            # (s_i v)_j = v_j - v_i C[i][j]
            m = tuple(
                tuple(int(a == b) - (C[i][a] if b == i else 0) for b in range(r))
                for a in range(r)
            )
            gens.append(m)
        self.generators = gens
        mats = [ident]
        words: list[tuple[int, ...]] = [()]
        index = {ident: 0}
        frontier = [0]
        while frontier:
            nxt = []
            for k in frontier:
                for i in range(r):
                    m = _matmul(mats[k], gens[i])
                    if m not in index:
                        index[m] = len(mats)
                        mats.append(m)
                        words.append(words[k] + (i,))
                        nxt.append(index[m])
            frontier = nxt
        self.matrices = mats
        self.words = words
        self._index = index
        self.order = len(mats)
        self.lengths = [len(w) for w in words]
        self.perms = []
        for m in mats:
            self.perms.append(tuple(root_index[_apply(m, b.weight)] for b in self._roots))
        self._mul: dict[tuple[int, int], int] = {}
        self.inverse = [0] * self.order
        for k, m in enumerate(mats):
            for j, m2 in enumerate(mats):
                if _matmul(m, m2) == ident:
                    self.inverse[k] = j
                    break
        self.identity = 0
        self.longest = max(range(self.order), key=lambda k: self.lengths[k])

    def mul(self, a: int, b: int) -> int:
        key = (a, b)
        out = self._mul.get(key)
        if out is None:
            out = self._index[_matmul(self.matrices[a], self.matrices[b])]
            self._mul[key] = out
        return out

    def act(self, w: int, weight: Sequence[int]) -> Weight:
        return _apply(self.matrices[w], weight)

    def act_root(self, w: int, k: int) -> int:
        """Index of w(root_k) in the root list."""
        return self.perms[w][k]

    def from_word(self, word: Iterable[int]) -> int:
        w = self.identity
        for i in word:
            w = self.mul(w, self.simple(i))
        return w

    def simple(self, i: int) -> int:
        return self._index[self.generators[i]]

    def sign(self, w: int) -> int:
        return -1 if self.lengths[w] % 2 else 1


def _matmul(a, b):
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n)
    )


def _apply(m, v) -> Weight:
    return tuple(sum(m[i][j] * v[j] for j in range(len(v))) for i in range(len(m)))


class RootDatum:
    """Root datum of a simply connected group of the given Cartan type."""

    def __init__(self, cartan_type: str, allow_optional: bool = False):
        if cartan_type not in SUPPORTED_TYPES:
            if not (allow_optional and cartan_type in OPTIONAL_TYPES):
                raise ValueError(f"unsupported Cartan type {cartan_type!r}")
        self.cartan_type = cartan_type
        self.cartan_matrix = _CARTAN[cartan_type]
        self.rank = len(self.cartan_matrix)
        C = self.cartan_matrix
        r = self.rank
        for i in range(r):
            if C[i][i] != 2 or any(C[i][j] > 0 for j in range(r) if j != i):
                raise ValueError("malformed Cartan matrix")
        self.simple_roots: tuple[Weight, ...] = tuple(tuple(C[i]) for i in range(r))
        self.simple_coroots: tuple[Coweight, ...] = tuple(
            tuple(int(i == j) for j in range(r)) for i in range(r)
        )

    def __repr__(self) -> str:
        return f"RootDatum({self.cartan_type!r})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RootDatum) and other.cartan_type == self.cartan_type

    def __hash__(self) -> int:
        return hash(("RootDatum", self.cartan_type))

    # roots -------------------------------------------------------------

    @cached_property
    def roots(self) -> tuple[Root, ...]:
        """All roots: positive roots by height then lex, then their negatives."""
        r = self.rank
        unit = [tuple(int(i == j) for j in range(r)) for i in range(r)]
        start = [Root(self.simple_roots[i], unit[i], unit[i]) for i in range(r)]
        seen = {b.weight: b for b in start}
        frontier = list(start)
        while frontier:
            nxt = []
            for b in frontier:
                for i in range(r):
                    c = b.weight[i]  # <beta, alpha_i^vee>
                    d = pairing(self.simple_roots[i], b.coweight)  # <alpha_i, beta^vee>
                    w = _sub(b.weight, _scale(c, self.simple_roots[i]))
                    if w in seen:
                        continue
                    s = list(b.simple)
                    s[i] -= c
                    cw = list(b.coweight)
                    cw[i] -= d
                    nb = Root(w, tuple(s), tuple(cw))
                    seen[w] = nb
                    nxt.append(nb)
            frontier = nxt
        allr = list(seen.values())
        for b in allr:
            if not (all(x >= 0 for x in b.simple) or all(x <= 0 for x in b.simple)):
                raise AssertionError("root with mixed-sign coordinates")
        pos = sorted((b for b in allr if b.positive), key=lambda b: (b.height, tuple(-x for x in b.simple)))
        neg = [Root(_scale(-1, b.weight), _scale(-1, b.simple), _scale(-1, b.coweight)) for b in pos]
        return tuple(pos + neg)

    @cached_property
    def positive_roots(self) -> tuple[Root, ...]:
        return self.roots[: len(self.roots) // 2]

    @property
    def n_positive(self) -> int:
        return len(self.roots) // 2

    @cached_property
    def root_index(self) -> dict[Weight, int]:
        return {b.weight: k for k, b in enumerate(self.roots)}

    @cached_property
    def highest_root(self) -> Root:
        return max(self.positive_roots, key=lambda b: b.height)

    @cached_property
    def highest_short_root(self) -> Root:
        """The root whose coroot is the highest coroot."""
        return max(self.positive_roots, key=lambda b: sum(b.coweight))

    @cached_property
    def weyl(self) -> WeylGroup:
        return WeylGroup(self)

    # weights -----------------------------------------------------------

    @cached_property
    def rho(self) -> tuple[Fraction, ...]:
        """Half-sum of positive roots; equals the sum of fundamental weights."""
        tot = [0] * self.rank
        for b in self.positive_roots:
            tot = [a + x for a, x in zip(tot, b.weight)]
        return tuple(Fraction(a, 2) for a in tot)

    @cached_property
    def rho_int(self) -> Weight:
        return tuple(int(x) for x in self.rho)

    @cached_property
    def two_rho_check(self) -> Coweight:
        """Sum of positive coroots."""
        tot = (0,) * self.rank
        for b in self.positive_roots:
            tot = _add(tot, b.coweight)
        return tot

    @cached_property
    def _inv_cartan_t(self) -> tuple[tuple[Fraction, ...], ...]:
        # weight_fund = C^T simple  =>  simple = (C^T)^{-1} weight_fund
        from .linalg import inverse_fraction

        r = self.rank
        ct = [[Fraction(self.cartan_matrix[j][i]) for j in range(r)] for i in range(r)]
        return tuple(tuple(row) for row in inverse_fraction(ct))

    def to_simple(self, weight: Sequence[int]) -> tuple[Fraction, ...]:
        """Coordinates of a weight in the basis of simple roots."""
        m = self._inv_cartan_t
        return tuple(sum(m[i][j] * weight[j] for j in range(self.rank)) for i in range(self.rank))

    def from_simple(self, coords: Sequence[int]) -> Weight:
        out = (0,) * self.rank
        for i, c in enumerate(coords):
            out = _add(out, _scale(c, self.simple_roots[i]))
        return out

    def in_root_lattice(self, weight: Sequence[int]) -> bool:
        return all(x.denominator == 1 for x in self.to_simple(weight))

    def height(self, weight: Sequence[int]) -> Fraction:
        """<weight, rho^vee> with rho^vee the half-sum of positive coroots."""
        return Fraction(pairing(weight, self.two_rho_check), 2)

    def leq(self, mu: Sequence[int], lam: Sequence[int]) -> bool:
        """Dominance order: lam - mu is a non-negative integer sum of simple roots."""
        c = self.to_simple(_sub(tuple(lam), tuple(mu)))
        return all(x.denominator == 1 and x >= 0 for x in c)

    @cached_property
    def root_lengths(self) -> tuple[Fraction, ...]:
        """Squared lengths (alpha_i, alpha_i), normalized so short roots have length 2."""
        r = self.rank
        C = self.cartan_matrix
        L: list[Fraction | None] = [None] * r
        L[0] = Fraction(2)
        changed = True
        while changed:
            changed = False
            for i in range(r):
                for j in range(r):
                    if L[i] is not None and L[j] is None and C[i][j] != 0:
                        # (a_i,a_j) = L_j/2 <a_i, a_j^vee> = L_i/2 <a_j, a_i^vee>
                        L[j] = L[i] * C[j][i] / C[i][j]
                        changed = True
        if any(x is None for x in L):
            raise ValueError("disconnected Dynkin diagram")
        m = min(L)
        return tuple(x * 2 / m for x in L)

    def inner(self, x: Sequence, y: Sequence) -> Fraction:
        """W-invariant form on weights: (w_i, a_j) = delta_ij (a_j,a_j)/2."""
        ys = self.to_simple(y)
        return sum(Fraction(x[i]) * ys[i] * self.root_lengths[i] / 2 for i in range(self.rank))

    def is_dominant(self, weight: Sequence[int]) -> bool:
        return all(x >= 0 for x in weight)

    def orbit(self, weight: Sequence[int]) -> list[Weight]:
        """W-orbit of a weight, closed under simple reflections."""
        weight = tuple(weight)
        seen = {weight}
        frontier = [weight]
        while frontier:
            nxt = []
            for v in frontier:
                for i in range(self.rank):
                    u = self.reflect(i, v)
                    if u not in seen:
                        seen.add(u)
                        nxt.append(u)
            frontier = nxt
        return sorted(seen)

    def reflect(self, i: int, weight: Sequence[int]) -> Weight:
        return _sub(tuple(weight), _scale(weight[i], self.simple_roots[i]))

    def dominant(self, weight: Sequence[int]) -> Weight:
        v = tuple(weight)
        while True:
            for i in range(self.rank):
                if v[i] < 0:
                    v = self.reflect(i, v)
                    break
            else:
                return v

    def dominant_weights(self, max_height: int) -> list[Weight]:
        """Dominant weights with <lam, 2 rho^vee> <= max_height, sorted by height."""
        out = []
        tr = self.two_rho_check
        bounds = [max_height // t for t in tr]
        for lam in itertools.product(*[range(b + 1) for b in bounds]):
            if pairing(lam, tr) <= max_height:
                out.append(tuple(lam))
        return sorted(out, key=lambda l: (pairing(l, tr), l))

    def dominant_below(self, lam: Sequence[int]) -> list[Weight]:
        """Dominant weights mu with mu <= lam."""
        lam = tuple(lam)
        out = []
        h = pairing(lam, self.two_rho_check)
        for mu in self.dominant_weights(h):
            if self.leq(mu, lam):
                out.append(mu)
        return out

    def weyl_dimension(self, lam: Sequence[int]) -> int:
        lr = tuple(Fraction(a) + r for a, r in zip(lam, self.rho))
        num = Fraction(1)
        for b in self.positive_roots:
            num *= Fraction(pairing(lr, b.coweight)) / pairing(self.rho, b.coweight)
        if num.denominator != 1:
            raise AssertionError("Weyl dimension formula gave a non-integer")
        return int(num)

    # Levi data ---------------------------------------------------------

    def levi(self, I: Iterable[int]) -> "LeviDatum":
        return LeviDatum(self, tuple(sorted(set(I))))

    def levi_subsets(self) -> list[tuple[int, ...]]:
        idx = range(self.rank)
        return [c for k in range(self.rank + 1) for c in itertools.combinations(idx, k)]


def exponents_from_heights(positive_heights: Iterable[int], rank: int) -> list[int]:
    """Exponents via the dual partition of the root-height distribution."""
    counts: dict[int, int] = {}
    for h in positive_heights:
        counts[h] = counts.get(h, 0) + 1
    exps = [0] * rank
    k = 1
    while counts.get(k, 0):
        for i in range(counts[k]):
            exps[i] += 1
        k += 1
    return sorted(exps)


@dataclass(frozen=True)
class LeviDatum:
    """Standard Levi subdatum attached to a subset I of the simple roots."""

    parent: RootDatum
    I: tuple[int, ...]

    def __repr__(self) -> str:
        return f"LeviDatum({self.parent.cartan_type}, I={list(self.I)})"

    @cached_property
    def roots_I(self) -> tuple[Root, ...]:
        return tuple(
            b for b in self.parent.roots if all(b.simple[j] == 0 for j in range(self.parent.rank) if j not in self.I)
        )

    @cached_property
    def positive_roots_I(self) -> tuple[Root, ...]:
        return tuple(b for b in self.roots_I if b.positive)

    @cached_property
    def outside_positive(self) -> tuple[Root, ...]:
        """Positive roots not in the Levi; the weights of the nilradical."""
        names = {b.weight for b in self.roots_I}
        return tuple(b for b in self.parent.positive_roots if b.weight not in names)

    @cached_property
    def weyl_I(self) -> list[int]:
        W = self.parent.weyl
        grp = {W.identity}
        frontier = [W.identity]
        while frontier:
            nxt = []
            for w in frontier:
                for i in self.I:
                    u = W.mul(w, W.simple(i))
                    if u not in grp:
                        grp.add(u)
                        nxt.append(u)
            frontier = nxt
        return sorted(grp)

    @cached_property
    def rho_I(self) -> tuple[Fraction, ...]:
        tot = [0] * self.parent.rank
        for b in self.positive_roots_I:
            tot = [a + x for a, x in zip(tot, b.weight)]
        return tuple(Fraction(a, 2) for a in tot)

    @cached_property
    def two_rho_check_I(self) -> Coweight:
        tot = (0,) * self.parent.rank
        for b in self.positive_roots_I:
            tot = _add(tot, b.coweight)
        return tot

    @cached_property
    def invariant_degrees(self) -> tuple[int, ...]:
        heights = [sum(b.simple[i] for i in self.I) for b in self.positive_roots_I]
        exps = exponents_from_heights(heights, len(self.I)) if self.I else []
        degs = [1] * (self.parent.rank - len(self.I)) + [e + 1 for e in exps]
        degs = sorted(degs)
        if math.prod(degs) != len(self.weyl_I):
            raise AssertionError("product of invariant degrees differs from |W_I|")
        return tuple(degs)

    @property
    def denominator_exponents(self) -> tuple[int, ...]:
        return tuple(2 * d for d in self.invariant_degrees)

    def f_roots(self) -> tuple[Root, ...]:
        """Factors of f_I: all roots of the Levi (as a multiset)."""
        return self.roots_I

    def g_roots(self) -> tuple[Root, ...]:
        """Factors of g_I: all roots outside the Levi."""
        names = {b.weight for b in self.roots_I}
        return tuple(b for b in self.parent.roots if b.weight not in names)

    def coset_key(self, weight: Sequence[int]) -> tuple:
        """Canonical label of the class of a weight in Lambda / Z I."""
        c = self.parent.to_simple(weight)
        return tuple(x - math.floor(x) if j in self.I else x for j, x in enumerate(c))

    def eval_f(self, t: Sequence) -> Fraction:
        return _eval_roots(self.f_roots(), t)

    def eval_g(self, t: Sequence) -> Fraction:
        return _eval_roots(self.g_roots(), t)


def root_value(b: Root, t: Sequence) -> Fraction:
    """Value of a root on the Cartan element sum_k t_k h_k (h_k simple coroots)."""
    return sum(Fraction(x) * y for x, y in zip(b.weight, t))


def _eval_roots(roots: Iterable[Root], t: Sequence) -> Fraction:
    out = Fraction(1)
    for b in roots:
        out *= root_value(b, t)
    return out


def root_datum(cartan_type: str, allow_optional: bool = False) -> RootDatum:
    return _cached_datum(cartan_type, allow_optional)


_DATA: dict[tuple[str, bool], RootDatum] = {}


def _cached_datum(t: str, opt: bool) -> RootDatum:
    key = (t, opt)
    if key not in _DATA:
        _DATA[key] = RootDatum(t, allow_optional=opt)
    return _DATA[key]


def parse_weight(text: str) -> Weight:
    return tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")
