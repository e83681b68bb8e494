"""Kazhdan-Lusztig polynomials of the extended affine Weyl group."""

from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path

from .affweyl import AffWeylElt, AffineWeylGroup, affine_weyl_group
from .poly import ONE, ZERO, PolyZ, Q
from .rootdata import RootDatum, pairing

__all__ = [
    "PolyZ",
    "KLEngine",
    "kl_engine",
    "r_polynomial",
    "kl_polynomial",
    "costalk_poincare",
]

CACHE_VERSION = "kl-1"
CACHE_ENV = "SATAKECHECK_CACHE_DIR"


class KLNegativeCoefficient(AssertionError):
    pass


class KLEngine:
    """R- and P-polynomials on one extended affine Weyl group.

    Pairs are translated by the length-zero part of ``w`` into the Coxeter
    component before any recursion, so results only depend on that
    component.
    """

    def __init__(self, group: AffineWeylGroup, cache_dir: str | os.PathLike | None = None):
        self.G = group
        self.datum = group.datum
        self._R: dict[tuple[AffWeylElt, AffWeylElt], PolyZ] = {}
        self._P: dict[tuple[AffWeylElt, AffWeylElt], PolyZ] = {}
        self._persisted: set[tuple[AffWeylElt, AffWeylElt]] = set()
        self.cache_dir = Path(cache_dir) if cache_dir is not None else None
        self.stats = {"disk_hits": 0, "disk_writes": 0, "computed": 0}

    # normalization -------------------------------------------------------

    def normalize(self, y: AffWeylElt, w: AffWeylElt) -> tuple[AffWeylElt, AffWeylElt] | None:
        """Translate (y, w) into the neutral component, or None if they differ."""
        G = self.G
        om_y, om_w = G.omega(y), G.omega(w)
        if om_y != om_w:
            return None
        oi = G.inv(om_w)
        return G.mul(oi, y), G.mul(oi, w)

    # R-polynomials ---------------------------------------------------------

    def r_polynomial(self, y: AffWeylElt, w: AffWeylElt) -> PolyZ:
        pair = self.normalize(y, w)
        if pair is None:
            return ZERO
        return self._r(*pair)

    def _r(self, y: AffWeylElt, w: AffWeylElt) -> PolyZ:
        key = (y, w)
        hit = self._R.get(key)
        if hit is not None:
            return hit
        G = self.G
        if y == w:
            out = ONE
        elif not G.bruhat_le(y, w):
            out = ZERO
        else:
            s = G.simple_reflections[G.right_descents(w)[0]]
            ws, ys = G.mul(w, s), G.mul(y, s)
            if G.length(ys) < G.length(y):
                out = self._r(ys, ws)
            else:
                out = (Q - 1) * self._r(y, ws) + Q * self._r(ys, ws)
        self._R[key] = out
        return out

    # P-polynomials ---------------------------------------------------------

    def kl_polynomial(self, y: AffWeylElt, w: AffWeylElt) -> PolyZ:
        pair = self.normalize(y, w)
        if pair is None:
            return ZERO
        y0, w0 = pair
        out = self._P.get((y0, w0))
        if out is None:
            out = self._disk_read(y0, w0)
            if out is not None:
                self._P[(y0, w0)] = out
                self._persisted.add((y0, w0))
                return out
            self._solve_column(y0, w0)
            out = self._P[(y0, w0)]
        if (y0, w0) not in self._persisted:
            self._disk_write(y0, w0, out)
            self._persisted.add((y0, w0))
        return out

    def _solve_column(self, y: AffWeylElt, w: AffWeylElt) -> None:
        """Fill P_{z,w} for every z in [y, w], top down by length.

        Uses q^{l(w)-l(z)} P_{z,w}(1/q) - P_{z,w}(q) = sum_{z<x<=w} R_{z,x} P_{x,w}
        together with deg P_{z,w} <= (l(w)-l(z)-1)/2.
        """
        G = self.G
        if not G.bruhat_le(y, w):
            self._P[(y, w)] = ZERO
            return
        interval = G.bruhat_interval(y, w).elements
        lw = G.length(w)
        done: dict[AffWeylElt, PolyZ] = {}
        for z in sorted(interval, key=lambda x: -G.length(x)):
            if (z, w) in self._P:
                done[z] = self._P[(z, w)]
                continue
            if z == w:
                p = ONE
            else:
                d = lw - G.length(z)
                rhs = ZERO
                for x, px in done.items():
                    if x != z and G.bruhat_le(z, x):
                        rhs = rhs + self._r(z, x) * px
                p = -rhs.truncate((d - 1) // 2)
                if any(v < 0 for v in p.coeffs.values()):
                    raise KLNegativeCoefficient(
                        f"negative KL coefficient for {G.canonical(z)}, {G.canonical(w)}: {p}"
                    )
                self.stats["computed"] += 1
            done[z] = p
            self._P[(z, w)] = p

    # persistent cache ------------------------------------------------------

    def _cache_path(self, y: AffWeylElt, w: AffWeylElt) -> Path | None:
        if self.cache_dir is None:
            return None
        t = self.datum.cartan_type
        key = f"{CACHE_VERSION}|{t}|{self.G.canonical(y)}|{self.G.canonical(w)}"
        digest = hashlib.sha256(key.encode()).hexdigest()[:24]
        return self.cache_dir / "kl" / t / f"{digest}.json"

    def _disk_read(self, y: AffWeylElt, w: AffWeylElt) -> PolyZ | None:
        path = self._cache_path(y, w)
        if path is None or not path.exists():
            return None
        data = json.loads(path.read_text())
        if data.get("version") != CACHE_VERSION:
            return None
        self.stats["disk_hits"] += 1
        return PolyZ.from_list(data["coeffs"])

    def _disk_write(self, y: AffWeylElt, w: AffWeylElt, p: PolyZ) -> None:
        path = self._cache_path(y, w)
        if path is None:
            return
        top = p.degree() or 0
        record = {
            "version": CACHE_VERSION,
            "type": self.datum.cartan_type,
            "y": self.G.canonical(y),
            "w": self.G.canonical(w),
            "coeffs": [p[i] for i in range(top + 1)] if not p.is_zero() else [],
        }
        if path.exists():
            old = json.loads(path.read_text())
            if old.get("coeffs") != record["coeffs"]:
                raise AssertionError(f"cache divergence at {path}")
            return
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(f".tmp{os.getpid()}")
        tmp.write_text(json.dumps(record, sort_keys=True))
        tmp.replace(path)
        self.stats["disk_writes"] += 1

    # geometric side ----------------------------------------------------------

    def costalk_poincare(self, lam, mu) -> PolyZ:
        """Sheared costalk Poincare polynomial of IC_lam at t^mu, halved degrees.

        Equals q^{<lam - mu, rho^vee>} P_{n_mu, n_lam}(1/q); for dominant mu
        this is the Lusztig q-analog d_mu(lam; q).
        """
        d = self.datum
        lam, mu = tuple(lam), tuple(mu)
        if not d.is_dominant(lam):
            raise ValueError("lam must be dominant")
        if not d.leq(d.dominant(mu), lam):
            return ZERO
        G = self.G
        p = self.kl_polynomial(G.double_coset_max(mu), G.double_coset_max(lam))
        shift = pairing(tuple(a - b for a, b in zip(lam, mu)), d.two_rho_check)
        if shift % 2:
            raise AssertionError("<lam - mu, 2 rho^vee> must be even on a coset of Q")
        return p.invert().shift(shift // 2)


_ENGINES: dict[tuple[str, str | None], KLEngine] = {}


def default_cache_dir() -> str | None:
    return os.environ.get(CACHE_ENV) or None


def kl_engine(datum: RootDatum | str, cache_dir: str | os.PathLike | None = None) -> KLEngine:
    G = affine_weyl_group(datum)
    if cache_dir is None:
        cache_dir = default_cache_dir()
    key = (G.datum.cartan_type, str(cache_dir) if cache_dir else None)
    if key not in _ENGINES:
        _ENGINES[key] = KLEngine(G, cache_dir)
    return _ENGINES[key]


def r_polynomial(datum, y: AffWeylElt, w: AffWeylElt) -> PolyZ:
    return kl_engine(datum).r_polynomial(y, w)


def kl_polynomial(datum, y: AffWeylElt, w: AffWeylElt) -> PolyZ:
    return kl_engine(datum).kl_polynomial(y, w)


def costalk_poincare(datum, lam, mu) -> PolyZ:
    return kl_engine(datum).costalk_poincare(lam, mu)
