"""Characters, weight multiplicities and Lusztig's q-analog.

Everything here is computed from root data alone; nothing is shared with
the module constructions in :mod:`satakecheck.hwrep`, so the two can serve
as independent oracles for each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .poly import ONE, ZERO, PolyZ
from .rootdata import LeviDatum, RootDatum, Weight, pairing


@lru_cache(maxsize=None)
def _partition_table(datum: RootDatum, target: tuple[int, ...]) -> dict[tuple[int, ...], PolyZ]:
    """q-Kostant values for all simple-root vectors between 0 and ``target``.

    Expands prod_{b>0} (1 - q x^b)^{-1} one root at a time, truncated to the
    box below ``target``.
    """
    import itertools

    box = list(itertools.product(*[range(t + 1) for t in target]))
    table: dict[tuple[int, ...], PolyZ] = {v: (ONE if not any(v) else ZERO) for v in box}
    for b in datum.positive_roots:
        step = b.simple
        # multiply the series by 1/(1 - q x^b): f(v) += q f(v - b), processed in
        # increasing order so multiples of b accumulate
        for v in sorted(box, key=sum):
            prev = tuple(a - c for a, c in zip(v, step))
            if all(x >= 0 for x in prev):
                table[v] = table[v] + table[prev].shift(1)
    return table


def kostant_partition_q(datum: RootDatum, nu: Sequence[int]) -> PolyZ:
    """Coefficient of q^n counts the ways to write nu as a sum of n positive roots."""
    c = datum.to_simple(tuple(nu))
    if any(x.denominator != 1 or x < 0 for x in c):
        return ZERO
    target = tuple(int(x) for x in c)
    return _partition_table(datum, target)[target]


def lusztig_q_mult(datum: RootDatum, lam: Sequence[int], mu: Sequence[int]) -> PolyZ:
    """Alternating Weyl-group sum of q-Kostant values."""
    lam, mu = tuple(lam), tuple(mu)
    if not datum.is_dominant(lam):
        raise ValueError("lam must be dominant")
    if not datum.leq(mu, lam):
        return ZERO
    W = datum.weyl
    rho = datum.rho_int
    lr = tuple(a + r for a, r in zip(lam, rho))
    mr = tuple(a + r for a, r in zip(mu, rho))
    out = ZERO
    for w in range(W.order):
        nu = tuple(a - b for a, b in zip(W.act(w, lr), mr))
        p = kostant_partition_q(datum, nu)
        if not p.is_zero():
            out = out + W.sign(w) * p
    return out


@lru_cache(maxsize=None)
def character(datum: RootDatum, lam: tuple[int, ...]) -> dict[Weight, int]:
    """All weight multiplicities of L(lam) by Freudenthal's recursion."""
    if not datum.is_dominant(lam):
        raise ValueError("lam must be dominant")
    rho = datum.rho
    lr = tuple(Fraction(a) + r for a, r in zip(lam, rho))
    norm_lr = datum.inner(lr, lr)
    mult: dict[Weight, int] = {lam: 1}
    pos = datum.positive_roots
    # dominant weights below lam, processed from the top down
    dom = sorted(datum.dominant_below(lam), key=lambda m: -datum.height(m))
    dom_mult: dict[Weight, int] = {}

    def m_of(nu: Weight) -> int:
        return dom_mult.get(datum.dominant(nu), 0)

    for mu in dom:
        if mu == lam:
            dom_mult[mu] = 1
            continue
        mr = tuple(Fraction(a) + r for a, r in zip(mu, rho))
        denom = norm_lr - datum.inner(mr, mr)
        tot = Fraction(0)
        for b in pos:
            k = 1
            while True:
                nu = tuple(a + k * c for a, c in zip(mu, b.weight))
                if not datum.leq(datum.dominant(nu), lam):
                    break
                tot += m_of(nu) * datum.inner(nu, b.weight)
                k += 1
        val = 2 * tot / denom
        if val.denominator != 1 or val < 0:
            raise AssertionError(f"Freudenthal gave {val} at {mu}")
        dom_mult[mu] = int(val)
    for mu, m in dom_mult.items():
        if m:
            for nu in datum.orbit(mu):
                mult[nu] = m
    return dict(sorted(mult.items()))


def freudenthal_mult(datum: RootDatum, lam: Sequence[int], mu: Sequence[int]) -> int:
    return character(datum, tuple(lam)).get(tuple(mu), 0)


@dataclass(frozen=True)
class CharacterTable:
    datum: RootDatum
    lam: Weight
    mults: dict

    @property
    def dimension(self) -> int:
        return sum(self.mults.values())


def character_table(datum: RootDatum, lam: Sequence[int]) -> CharacterTable:
    return CharacterTable(datum, tuple(lam), character(datum, tuple(lam)))


def graded_character(datum: RootDatum, levi: LeviDatum, lam: Sequence[int], coset=None) -> PolyZ:
    """sum_mu mult(mu) q^{<mu, 2 rho_I^vee>}, optionally over one Lambda/Z I class."""
    out: dict[int, int] = {}
    tr = levi.two_rho_check_I
    for mu, m in character(datum, tuple(lam)).items():
        if coset is not None and levi.coset_key(mu) != coset:
            continue
        e = pairing(mu, tr)
        out[e] = out.get(e, 0) + m
    return PolyZ(out)
