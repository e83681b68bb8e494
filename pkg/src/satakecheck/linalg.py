"""Exact linear algebra over the rationals.

Small dense systems use plain ``Fraction`` Gaussian elimination.  The large
sparse kernels of the invariant engine go through FLINT integer matrices,
whose nullspace routine is exact.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Mapping, Sequence

import flint

Matrix = list[list[Fraction]]


def to_fraction_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def rref(rows: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = to_fraction_matrix(rows)
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> Matrix:
    """Basis of {x : A x = 0}, one vector per free column."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    m, piv = rref(rows)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(piv):
            v[p] = -m[i][f]
        basis.append(v)
    return basis


def determinant(rows: Sequence[Sequence]) -> Fraction:
    m = to_fraction_matrix(rows)
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det


def inverse_fraction(rows: Sequence[Sequence]) -> Matrix:
    n = len(rows)
    aug = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(rows)]
    m, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in m]


def solve(rows: Sequence[Sequence], rhs: Sequence) -> list[Fraction]:
    """Unique solution of A x = b; raises if the system is singular or inconsistent."""
    n = len(rows[0])
    aug = [list(map(Fraction, row)) + [Fraction(b)] for row, b in zip(rows, rhs)]
    m, piv = rref(aug)
    if n in piv:
        raise ValueError("inconsistent system")
    if piv != list(range(n)):
        raise ValueError("system is not uniquely solvable")
    return [m[i][n] for i in range(n)]


def express(vecs: Sequence[Sequence], target: Sequence) -> list[Fraction] | None:
    """Coefficients c with sum c_k vecs[k] = target, or None if not in the span.

    ``vecs`` must be linearly independent.
    """
    k = len(vecs)
    dim = len(target)
    aug = [[Fraction(vecs[j][i]) for j in range(k)] + [Fraction(target[i])] for i in range(dim)]
    m, piv = rref(aug)
    if k in piv:
        return None
    sol = [Fraction(0)] * k
    for i, p in enumerate(piv):
        sol[p] = m[i][k]
    return sol


def clear_row(row: Mapping[int, Fraction]) -> dict[int, int]:
    """Scale a sparse rational row by the lcm of its denominators."""
    den = 1
    for v in row.values():
        den = den * v.denominator // math.gcd(den, v.denominator)
    return {c: int(v * den) for c, v in row.items() if v}


def sparse_nullspace(rows: Sequence[Mapping[int, Fraction]], ncols: int) -> list[list[int]]:
    """Integer basis of the kernel of a sparse rational matrix.

    Each row is a map column -> value.  Rows are scaled to integers first,
    which leaves the kernel unchanged.
    """
    if ncols == 0:
        return []
    dense_rows = []
    for row in rows:
        ir = clear_row(row)
        if not ir:
            continue
        dense = [0] * ncols
        for c, v in ir.items():
            dense[c] = v
        dense_rows.append(dense)
    if not dense_rows:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    M = flint.fmpz_mat(dense_rows)
    X, k = M.nullspace()
    basis = []
    for j in range(k):
        v = [int(X[i, j]) for i in range(ncols)]
        g = 0
        for x in v:
            g = math.gcd(g, x)
        if g > 1:
            v = [x // g for x in v]
        basis.append(v)
    return basis


def _unit_eliminate(rows: list[dict[int, int]]) -> tuple[int, list[dict[int, int]]]:
    """Pivot on entries equal to +-1 while any remain.

    Row operations with a unit pivot stay inside the integers, and each pivot
    contributes one to the rank.  Returns that count and the leftover rows.
    """
    rows = [dict(r) for r in rows if r]
    colrows: dict[int, set[int]] = {}
    for k, r in enumerate(rows):
        for c in r:
            colrows.setdefault(c, set()).add(k)
    rank = 0
    progress = True
    while progress:
        progress = False
        for c in sorted(colrows, key=lambda c: (len(colrows[c]), c)):
            rs = colrows[c]
            if not rs:
                continue
            cand = [k for k in rs if rows[k][c] in (1, -1)]
            if not cand:
                continue
            k = min(cand, key=lambda k: (len(rows[k]), k))
            prow = rows[k]
            pv = prow[c]
            for k2 in sorted(rs):
                if k2 == k:
                    continue
                r2 = rows[k2]
                f = r2[c] * pv
                for cc, vv in prow.items():
                    nv = r2.get(cc, 0) - f * vv
                    if nv:
                        if cc not in r2:
                            colrows[cc].add(k2)
                        r2[cc] = nv
                    elif cc in r2:
                        del r2[cc]
                        colrows[cc].discard(k2)
            for cc in prow:
                colrows[cc].discard(k)
            rows[k] = {}
            rank += 1
            progress = True
    return rank, [r for r in rows if r]


def sparse_rank(rows: Sequence[Mapping[int, Fraction]], ncols: int) -> int:
    """Exact rank: unit-pivot elimination, then FLINT on what is left."""
    if ncols == 0:
        return 0
    rank, rest = _unit_eliminate([clear_row(r) for r in rows])
    if not rest:
        return rank
    cols = sorted({c for r in rest for c in r})
    dense = [[r.get(c, 0) for c in cols] for r in rest]
    M = flint.fmpz_mat(dense)
    return rank + M.rank()
