"""Kostant sections, partial Kostant sections and centralizer checks.

Everything lives in the adjoint model: the slice is ``f_I + b`` and the
partial Kostant section of a point ``c`` of the Chevalley space of the Levi
is ``f_I + s`` with ``s`` in the centralizer of ``e_I`` in the Levi.

Coordinates on the Chevalley space are fixed once: for ``j`` outside ``I``
the coefficient of ``h_j`` (a central linear form on the Levi), and for each
higher invariant degree ``d`` of the Levi the trace of ``rho_V(x)^d`` on a
small faithful module ``V``.  The section solves ``chi_I(f_I + s) = c``
degree block by degree block; each block is affine in its own unknowns.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from . import linalg
from .hwrep import ChevalleyAlgebra, build_algebra, build_irrep, matmul
from .rootdata import LeviDatum, Root, root_value

FAITHFUL_MODULE = {"A1": (1,), "A2": (1, 0), "B2": (0, 1), "C2": (1, 0), "G2": (1, 0)}


class WallPoint(ValueError):
    """Raised when a check needs an anti-generic point and a root vanishes."""

    def __init__(self, root: Root, message: str):
        super().__init__(message)
        self.root = root


@dataclass(frozen=True)
class ChevalleySpacePoint:
    I: LeviDatum
    values: tuple[Fraction, ...]
    preimage: tuple[Fraction, ...]  # Cartan element sum_k t_k h_k
    seed: int | None = None
    index: int | None = None

    @property
    def f_generic(self) -> bool:
        return self.I.eval_f(self.preimage) != 0

    @property
    def g_generic(self) -> bool:
        return self.I.eval_g(self.preimage) != 0

    def vanishing_roots(self) -> list[Root]:
        return [b for b in self.I.outside_positive if root_value(b, self.preimage) == 0]


@dataclass(frozen=True)
class SectionValue:
    point: tuple[Fraction, ...]
    kind: str


class SliceGeometry:
    """Chevalley-space coordinates and sections for one Levi of one algebra."""

    def __init__(self, a: ChevalleyAlgebra, levi: LeviDatum):
        self.a = a
        self.levi = levi
        d = a.datum
        self.central = [j for j in range(d.rank) if j not in levi.I]
        self.trace_degrees = [k for k in levi.invariant_degrees if k > 1]
        if len(set(self.trace_degrees)) != len(self.trace_degrees):
            raise NotImplementedError("repeated invariant degrees need more than one trace module")
        self.V = build_irrep(a, FAITHFUL_MODULE[d.cartan_type])
        self.V_mats = a.rep_matrices(self.V)

    # chi_I ---------------------------------------------------------------

    @cached_property
    def _levi_basis(self) -> set[int]:
        a = self.a
        names = {b.weight for b in self.levi.roots_I}
        out = {a.h_index(i) for i in range(a.rank)}
        for k in range(a.npos):
            if a.datum.roots[k].weight in names:
                out.add(a.e_index(k))
                out.add(a.f_index(k))
        return out

    def project(self, x: Sequence) -> list[Fraction]:
        """Drop the components outside the Levi."""
        keep = self._levi_basis
        return [Fraction(v) if k in keep else Fraction(0) for k, v in enumerate(x)]

    def chi(self, x: Sequence) -> tuple[Fraction, ...]:
        a = self.a
        y = self.project(x)
        vals = [y[a.h_index(j)] for j in self.central]
        if self.trace_degrees:
            M = a.rep_of(self.V_mats, y)
            P = M
            k = 1
            for d in sorted(self.trace_degrees):
                while k < d:
                    P = matmul(P, M)
                    k += 1
                vals.append(sum((P[i][i] for i in range(len(P))), Fraction(0)))
        return tuple(vals)

    def cartan_element(self, t: Sequence) -> list[Fraction]:
        return self.a.lie_cartan(t)

    # the section -----------------------------------------------------------

    @cached_property
    def f_I(self) -> list[Fraction]:
        a = self.a
        return a.vector({a.f_simple(i): 1 for i in self.levi.I})

    @cached_property
    def e_I(self) -> list[Fraction]:
        a = self.a
        return a.vector({a.e_simple(i): 1 for i in self.levi.I})

    @cached_property
    def complement(self) -> list[tuple[int, list[Fraction]]]:
        """Basis of the centralizer of e_I in the Levi, as (height, vector).

        Each vector lies in one height space, hence in one eigenspace of
        ad 2rho^vee; the basis is grouped by height.
        """
        a = self.a
        d = a.datum
        levi_idx = sorted(self._levi_basis)
        by_height: dict[int, list[int]] = {}
        for k in levi_idx:
            w = a.basis_weights[k]
            h = sum(d.to_simple(w)) if any(w) else 0
            by_height.setdefault(int(h), []).append(k)
        out = []
        ad = a.ad_matrix(self.e_I)
        for h in sorted(by_height):
            if h < 0:
                continue
            idx = by_height[h]
            rows = [[ad[r][k] for k in idx] for r in range(a.dim)]
            for v in linalg.nullspace(rows, len(idx)):
                vec = [Fraction(0)] * a.dim
                for k, c in zip(idx, v):
                    vec[k] = c
                out.append((h, vec))
        expected = len(self.central) + len(self.trace_degrees)
        if len(out) != expected:
            raise AssertionError(f"centralizer of e_I has dimension {len(out)}, expected {expected}")
        for _, v in out:
            if not self.is_height_homogeneous(v):
                raise AssertionError("complement is not graded")
        return out

    def is_height_homogeneous(self, v: Sequence) -> bool:
        d = self.a.datum
        hs = {sum(d.to_simple(self.a.basis_weights[k])) for k, x in enumerate(v) if x}
        return len(hs) <= 1

    def _point(self, coeffs: Sequence[Fraction]) -> list[Fraction]:
        x = list(self.f_I)
        for c, (_, v) in zip(coeffs, self.complement):
            if c:
                x = [a + c * b for a, b in zip(x, v)]
        return x

    def section(self, c: Sequence) -> list[Fraction]:
        """The point f_I + s with chi_I(f_I + s) = c."""
        c = tuple(Fraction(x) for x in c)
        comp = self.complement
        n = len(comp)
        # invariant k has degree 1 (central) or its trace degree
        inv_deg = [1] * len(self.central) + sorted(self.trace_degrees)
        unk_deg = [h + 1 for h, _ in comp]
        coeffs = [Fraction(0)] * n
        for deg in sorted(set(inv_deg)):
            inv = [k for k, dd in enumerate(inv_deg) if dd == deg]
            unk = [k for k, dd in enumerate(unk_deg) if dd == deg]
            if len(inv) != len(unk):
                raise AssertionError(f"degree {deg}: {len(inv)} invariants for {len(unk)} unknowns")
            for k in unk:
                coeffs[k] = Fraction(0)
            base = self.chi(self._point(coeffs))
            A = []
            for k in unk:
                trial = list(coeffs)
                trial[k] = Fraction(1)
                val = self.chi(self._point(trial))
                A.append([val[m] - base[m] for m in inv])
            rows = [[A[col][row] for col in range(len(unk))] for row in range(len(inv))]
            sol = linalg.solve(rows, [c[m] - base[m] for m in inv])
            for k, s in zip(unk, sol):
                coeffs[k] = s
        x = self._point(coeffs)
        if self.chi(x) != c:
            raise AssertionError("section equation not satisfied")
        return x

    # points --------------------------------------------------------------

    def point_from_cartan(self, t: Sequence, seed=None, index=None) -> ChevalleySpacePoint:
        t = tuple(Fraction(x) for x in t)
        return ChevalleySpacePoint(self.levi, self.chi(self.cartan_element(t)), t, seed, index)

    def random_points(self, n: int, seed: int, anti_generic: bool = True) -> list[ChevalleySpacePoint]:
        rng = random.Random(seed)
        out = []
        seen = set()
        while len(out) < n:
            t = tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(self.a.rank))
            p = self.point_from_cartan(t, seed, len(out))
            if (anti_generic and not p.g_generic) or p.values in seen:
                continue
            seen.add(p.values)
            out.append(p)
        return out

    def wall_point(self, root: Root, seed: int) -> ChevalleySpacePoint:
        """A point whose preimage lies on the hyperplane of ``root``."""
        rng = random.Random(seed)
        t = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(self.a.rank)]
        v = root_value(root, t)
        t = [x - v / 2 * c for x, c in zip(t, root.coweight)]
        if root_value(root, t) != 0:
            raise AssertionError("projection onto the wall failed")
        return self.point_from_cartan(t, seed, None)


_GEOMETRY: dict[tuple[str, tuple[int, ...]], SliceGeometry] = {}


def geometry(a: ChevalleyAlgebra | str, I: LeviDatum | Iterable[int]) -> SliceGeometry:
    if isinstance(a, str):
        a = build_algebra(a)
    levi = I if isinstance(I, LeviDatum) else a.datum.levi(I)
    key = (a.datum.cartan_type, levi.I)
    if key not in _GEOMETRY:
        _GEOMETRY[key] = SliceGeometry(a, levi)
    return _GEOMETRY[key]


def chi_I(a, I, x) -> tuple[Fraction, ...]:
    return geometry(a, I).chi(x)


def partial_kostant_section(a, I, c: ChevalleySpacePoint | Sequence) -> SectionValue:
    g = geometry(a, I)
    vals = c.values if isinstance(c, ChevalleySpacePoint) else c
    if not g.levi.I:
        kind = "cartan_embedding"
    elif len(g.levi.I) == g.a.rank:
        kind = "kostant"
    else:
        kind = f"partial_kostant({','.join(str(i + 1) for i in g.levi.I)})"
    return SectionValue(tuple(g.section(vals)), kind)


def kostant_section(a, c: ChevalleySpacePoint | Sequence) -> SectionValue:
    if isinstance(a, str):
        a = build_algebra(a)
    return partial_kostant_section(a, range(a.rank), c)


def centralizer_dim(a: ChevalleyAlgebra | str, x: Sequence) -> int:
    if isinstance(a, str):
        a = build_algebra(a)
    return a.dim - linalg.rank(a.ad_matrix([Fraction(v) for v in x]))


def regular_centralizer_fiber(a, c: ChevalleySpacePoint | Sequence) -> int:
    return centralizer_dim(a, kostant_section(a, c).point)


@dataclass
class TorsorReport:
    status: str
    determinant: Fraction
    stabilizer_dim: int
    orbit_rank: int
    centralizer_dim: int
    point: ChevalleySpacePoint

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "determinant": str(self.determinant),
            "stabilizer_dim": self.stabilizer_dim,
            "orbit_rank": self.orbit_rank,
            "centralizer_dim": self.centralizer_dim,
            "point": {"seed": self.point.seed, "index": self.point.index,
                      "values": [str(v) for v in self.point.values]},
        }


def torsor_check(a, I, c: ChevalleySpacePoint) -> TorsorReport:
    """Free-action criterion for U at sigma_I(c).

    PASS needs ad_x invertible on the nilradical v_I and X -> [X, x]
    injective on u, where x = sigma_I(c).
    """
    g = geometry(a, I)
    alg = g.a
    bad = c.vanishing_roots()
    if bad:
        raise WallPoint(bad[0], f"root {bad[0].simple} vanishes at the preimage; the point is not anti-generic")
    x = g.section(c.values)
    ad = alg.ad_matrix(x)
    v_idx = [alg.e_index(alg.datum.root_index[b.weight]) for b in g.levi.outside_positive]
    block = [[ad[r][k] for k in v_idx] for r in v_idx]
    if any(ad[r][k] for k in v_idx for r in range(alg.dim) if r not in v_idx):
        raise AssertionError("ad_x does not preserve v_I")
    det = linalg.determinant(block) if block else Fraction(1)
    u_idx = [alg.e_index(k) for k in range(alg.npos)]
    fields = [[-ad[r][k] for k in u_idx] for r in range(alg.dim)]  # [X, x] = -ad_x X
    orbit = linalg.rank(fields)
    stab = len(u_idx) - orbit
    cdim = alg.dim - linalg.rank(ad)
    status = "PASS" if det != 0 and stab == 0 else "FAIL"
    return TorsorReport(status, det, stab, orbit, cdim, c)


def reflect_cartan(a: ChevalleyAlgebra, i: int, t: Sequence) -> tuple[Fraction, ...]:
    """s_i on a Cartan element written in the simple coroots."""
    C = a.datum.cartan_matrix
    t = [Fraction(x) for x in t]
    t[i] = t[i] - sum(C[i][k] * t[k] for k in range(len(t)))
    return tuple(t)
