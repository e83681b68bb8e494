"""Integer Laurent polynomials in one variable q."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping


class PolyZ:
    """Sparse Laurent polynomial with integer coefficients.

    Zero coefficients are never stored, so two polynomials are equal exactly
    when their coefficient maps are equal.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        c = {}
        if coeffs:
            for e, v in coeffs.items():
                v = int(v)
                if v:
                    c[int(e)] = v
        self._c = c
        self._hash = None

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "PolyZ":
        return cls({exp: coeff})

    @classmethod
    def from_list(cls, coeffs: Iterable[int], low: int = 0) -> "PolyZ":
        return cls({low + i: v for i, v in enumerate(coeffs)})

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._c)

    def __getitem__(self, e: int) -> int:
        return self._c.get(e, 0)

    def is_zero(self) -> bool:
        return not self._c

    def degree(self) -> int | None:
        return max(self._c) if self._c else None

    def low_degree(self) -> int | None:
        return min(self._c) if self._c else None

    def terms(self) -> list[tuple[int, int]]:
        return sorted(self._c.items())

    def __add__(self, other: "PolyZ | int") -> "PolyZ":
        other = _lift(other)
        c = dict(self._c)
        for e, v in other._c.items():
            c[e] = c.get(e, 0) + v
        return PolyZ(c)

    __radd__ = __add__

    def __neg__(self) -> "PolyZ":
        return PolyZ({e: -v for e, v in self._c.items()})

    def __sub__(self, other: "PolyZ | int") -> "PolyZ":
        return self + (-_lift(other))

    def __rsub__(self, other: "PolyZ | int") -> "PolyZ":
        return _lift(other) - self

    def __mul__(self, other: "PolyZ | int") -> "PolyZ":
        other = _lift(other)
        c: dict[int, int] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                c[e1 + e2] = c.get(e1 + e2, 0) + v1 * v2
        return PolyZ(c)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "PolyZ":
        out = PolyZ({0: 1})
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = PolyZ({0: other})
        if not isinstance(other, PolyZ):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __call__(self, x):
        x = Fraction(x)
        out = sum((v * x**e for e, v in self._c.items()), Fraction(0))
        return int(out) if out.denominator == 1 else out

    def shift(self, k: int) -> "PolyZ":
        """Multiply by q**k."""
        return PolyZ({e + k: v for e, v in self._c.items()})

    def invert(self) -> "PolyZ":
        """Substitute q -> 1/q."""
        return PolyZ({-e: v for e, v in self._c.items()})

    def subs_power(self, k: int) -> "PolyZ":
        """Substitute q -> q**k."""
        return PolyZ({k * e: v for e, v in self._c.items()})

    def truncate(self, top: int) -> "PolyZ":
        """Drop every term of degree above ``top``."""
        return PolyZ({e: v for e, v in self._c.items() if e <= top})

    def nonnegative(self) -> bool:
        return all(v > 0 for v in self._c.values())

    def to_json(self) -> dict:
        return {str(e): v for e, v in sorted(self._c.items())}

    @classmethod
    def from_json(cls, data: Mapping[str, int]) -> "PolyZ":
        return cls({int(e): v for e, v in data.items()})

    def __repr__(self) -> str:
        return f"PolyZ({self})"

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for e, v in sorted(self._c.items()):
            if e == 0:
                mono = str(v)
            else:
                base = "q" if e == 1 else f"q^{e}"
                mono = base if v == 1 else ("-" + base if v == -1 else f"{v}*{base}")
            parts.append(mono)
        return " + ".join(parts).replace("+ -", "- ")


def _lift(x: "PolyZ | int") -> PolyZ:
    return x if isinstance(x, PolyZ) else PolyZ({0: x})


ONE = PolyZ({0: 1})
ZERO = PolyZ()
Q = PolyZ({1: 1})


def series_mul_trunc(a: PolyZ, b: PolyZ, top: int) -> PolyZ:
    """Product of two Laurent series, keeping degrees up to ``top``."""
    return (a * b).truncate(top)


def inverse_denominator_series(exponents: Iterable[int], low: int, top: int) -> PolyZ:
    """Expansion of prod (1 - q^e)^-1 up to degree ``top - low``."""
    span = top - low
    coeffs = [0] * (span + 1)
    coeffs[0] = 1
    for e in exponents:
        if e <= 0:
            raise ValueError("denominator exponents must be positive")
        for n in range(e, span + 1):
            coeffs[n] += coeffs[n - e]
    return PolyZ.from_list(coeffs)
