"""Extended affine Weyl group Lambda x| W.

An element ``t_lam w`` acts on the weight space by ``v -> w v + lam``.  The
affine root functionals are the coroots of the dual-side datum, so the
fundamental alcove is ``{v : 0 < <v, b^vee> < 1 for b > 0}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple

from .rootdata import RootDatum, Weight, pairing, root_datum


class AffWeylElt(NamedTuple):
    """``t_translation * w`` with ``w`` an index into the finite Weyl group."""

    translation: Weight
    finite: int


@dataclass
class BruhatInterval:
    bottom: AffWeylElt
    top: AffWeylElt
    elements: list[AffWeylElt]
    covers: list[tuple[int, int]]  # (lower index, upper index)

    def __len__(self) -> int:
        return len(self.elements)


class AffineWeylGroup:
    """Lengths, products, reduced words and Bruhat order."""

    def __init__(self, datum: RootDatum):
        self.datum = datum
        self.W = datum.weyl
        self.rank = datum.rank
        self._length: dict[AffWeylElt, int] = {}
        self._le: dict[tuple[AffWeylElt, AffWeylElt], bool] = {}
        self._reduce: dict[AffWeylElt, tuple[AffWeylElt, tuple[int, ...]]] = {}
        self._pos_idx = range(datum.n_positive)
        # sign of w^{-1} b for each finite w and positive root b
        npos = datum.n_positive
        self._inv_pos = []
        for w in range(self.W.order):
            winv = self.W.inverse[w]
            self._inv_pos.append(tuple(self.W.act_root(winv, k) < npos for k in range(npos)))

    # group structure ---------------------------------------------------

    @cached_property
    def identity(self) -> AffWeylElt:
        return AffWeylElt((0,) * self.rank, self.W.identity)

    def translation(self, lam: Iterable[int]) -> AffWeylElt:
        return AffWeylElt(tuple(lam), self.W.identity)

    def finite(self, w: int) -> AffWeylElt:
        return AffWeylElt((0,) * self.rank, w)

    def mul(self, x: AffWeylElt, y: AffWeylElt) -> AffWeylElt:
        moved = self.W.act(x.finite, y.translation)
        return AffWeylElt(
            tuple(a + b for a, b in zip(x.translation, moved)), self.W.mul(x.finite, y.finite)
        )

    def inv(self, x: AffWeylElt) -> AffWeylElt:
        winv = self.W.inverse[x.finite]
        lam = self.W.act(winv, x.translation)
        return AffWeylElt(tuple(-a for a in lam), winv)

    @cached_property
    def simple_reflections(self) -> tuple[AffWeylElt, ...]:
        """(s_0, s_1, ..., s_r); s_0 is the reflection in <v, phi^vee> = 1."""
        d = self.datum
        phi = d.highest_short_root
        # finite reflection s_phi as a Weyl element: find w with w = w^{-1} fixing the hyperplane
        s_phi = self._reflection_of(phi.weight)
        s0 = AffWeylElt(phi.weight, s_phi)
        return (s0,) + tuple(self.finite(self.W.simple(i)) for i in range(self.rank))

    def _reflection_of(self, root: Weight) -> int:
        W = self.W
        d = self.datum
        k = d.root_index[root]
        b = d.roots[k]
        target = {}
        for i in range(self.rank):
            e = tuple(int(i == j) for j in range(self.rank))
            # s_b(v) = v - <v, b^vee> b
            coeff = pairing(e, b.coweight)
            target[i] = tuple(x - coeff * y for x, y in zip(e, b.weight))
        for w in range(W.order):
            if all(W.act(w, tuple(int(i == j) for j in range(self.rank))) == target[i] for i in range(self.rank)):
                return w
        raise AssertionError("reflection not found in W")

    # length ------------------------------------------------------------

    def length(self, x: AffWeylElt) -> int:
        out = self._length.get(x)
        if out is None:
            lam = x.translation
            inv_pos = self._inv_pos[x.finite]
            tot = 0
            for k, b in enumerate(self.datum.positive_roots):
                m = pairing(lam, b.coweight)
                tot += abs(m) if inv_pos[k] else abs(m - 1)
            self._length[x] = tot
            out = tot
        return out

    def right_descents(self, x: AffWeylElt) -> list[int]:
        lx = self.length(x)
        return [i for i, s in enumerate(self.simple_reflections) if self.length(self.mul(x, s)) < lx]

    def omega_split(self, x: AffWeylElt) -> tuple[AffWeylElt, tuple[int, ...]]:
        """Write x = omega * s_{i1} ... s_{ik} with omega of length zero."""
        hit = self._reduce.get(x)
        if hit is not None:
            return hit
        word: list[int] = []
        y = x
        while True:
            ds = self.right_descents(y)
            if not ds:
                break
            i = ds[0]
            y = self.mul(y, self.simple_reflections[i])
            word.append(i)
        out = (y, tuple(reversed(word)))
        self._reduce[x] = out
        return out

    def omega(self, x: AffWeylElt) -> AffWeylElt:
        return self.omega_split(x)[0]

    def reduced_word(self, x: AffWeylElt) -> tuple[int, ...]:
        return self.omega_split(x)[1]

    def from_word(self, word: Iterable[int], omega: AffWeylElt | None = None) -> AffWeylElt:
        x = omega if omega is not None else self.identity
        for i in word:
            x = self.mul(x, self.simple_reflections[i])
        return x

    def canonical(self, x: AffWeylElt) -> str:
        lam = ",".join(str(a) for a in x.translation)
        word = "".join(str(i + 1) for i in self.W.words[x.finite])
        return f"t[{lam}]·w[{word}]"

    @cached_property
    def length_zero(self) -> list[AffWeylElt]:
        """The subgroup Omega, one element for each class of Lambda / Q."""
        d = self.datum
        reps = {}
        r = self.rank
        for lam in _box(r, 2):
            key = tuple(x - int(x.__floor__()) for x in d.to_simple(lam))
            if key in reps:
                continue
            reps[key] = self.omega(self.translation(lam))
        return sorted(reps.values())

    # Bruhat order ------------------------------------------------------

    def bruhat_le(self, y: AffWeylElt, w: AffWeylElt) -> bool:
        """y <= w, computed by the descent recursion of Deodhar."""
        key = (y, w)
        hit = self._le.get(key)
        if hit is not None:
            return hit
        ly, lw = self.length(y), self.length(w)
        if ly > lw:
            out = False
        elif lw == 0 or ly == lw:
            out = y == w
        else:
            i = self.right_descents(w)[0]
            s = self.simple_reflections[i]
            ws = self.mul(w, s)
            ys = self.mul(y, s)
            if self.length(ys) < ly:
                out = self.bruhat_le(ys, ws)
            else:
                out = self.bruhat_le(y, ws)
        self._le[key] = out
        return out

    def lower_ideal(self, w: AffWeylElt) -> set[AffWeylElt]:
        """{z : z <= w} as the set of products of subwords of a reduced word."""
        om, word = self.omega_split(w)
        S = {om}
        for i in word:
            s = self.simple_reflections[i]
            S |= {self.mul(z, s) for z in S}
        return S

    def bruhat_interval(self, y: AffWeylElt, w: AffWeylElt) -> BruhatInterval:
        if self.omega(y) != self.omega(w) or not self.bruhat_le(y, w):
            return BruhatInterval(y, w, [], [])
        elems = [z for z in self.lower_ideal(w) if self.bruhat_le(y, z)]
        elems.sort(key=lambda z: (self.length(z), z))
        pos = {z: k for k, z in enumerate(elems)}
        covers = []
        for z in elems:
            for k in self.coatoms(z):
                if k in pos:
                    covers.append((pos[k], pos[z]))
        covers.sort()
        return BruhatInterval(y, w, elems, covers)

    def coatoms(self, w: AffWeylElt) -> set[AffWeylElt]:
        """Elements covered by w: delete one letter of a reduced word."""
        om, word = self.omega_split(w)
        lw = len(word)
        out = set()
        for k in range(lw):
            z = self.from_word(word[:k] + word[k + 1 :], om)
            if self.length(z) == lw - 1:
                out.add(z)
        return out

    # double cosets ---------------------------------------------------------

    def double_coset(self, mu: Iterable[int]) -> list[AffWeylElt]:
        mu = tuple(mu)
        W = self.W
        out = set()
        for u in range(W.order):
            umu = W.act(u, mu)
            for v in range(W.order):
                out.add(AffWeylElt(umu, W.mul(u, v)))
        return sorted(out)

    def double_coset_max(self, mu: Iterable[int]) -> AffWeylElt:
        """The unique element of maximal length in W t_mu W."""
        elems = self.double_coset(mu)
        top = max(self.length(x) for x in elems)
        best = [x for x in elems if self.length(x) == top]
        if len(best) != 1:
            raise AssertionError(f"{len(best)} elements of maximal length in W t_mu W")
        return best[0]

    def elements_up_to(self, max_length: int, omega: AffWeylElt | None = None) -> list[AffWeylElt]:
        """Breadth-first enumeration of omega * W_aff up to the given length."""
        start = omega if omega is not None else self.identity
        seen = {start: 0}
        frontier = [start]
        for depth in range(1, max_length + 1):
            nxt = []
            for x in frontier:
                for s in self.simple_reflections:
                    y = self.mul(x, s)
                    if y not in seen:
                        seen[y] = depth
                        nxt.append(y)
            frontier = nxt
        return sorted(seen, key=lambda z: (seen[z], z))


def _box(r: int, k: int):
    import itertools

    return itertools.product(range(-k, k + 1), repeat=r)


_GROUPS: dict[str, AffineWeylGroup] = {}


def affine_weyl_group(datum: RootDatum | str) -> AffineWeylGroup:
    if isinstance(datum, str):
        datum = root_datum(datum)
    key = datum.cartan_type
    if key not in _GROUPS:
        _GROUPS[key] = AffineWeylGroup(datum)
    return _GROUPS[key]
