"""Exact linear algebra over ℚ.

Elimination is fraction-free: rows are scaled to primitive integer vectors
and combined with integer multipliers, so pivot choices are reproducible and
no intermediate fractions appear.  Results are returned as reduced row
echelon form over :class:`fractions.Fraction`.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

Row = Sequence  # of int | Fraction


def _primitive(row: list[int]) -> list[int]:
    g = 0
    for v in row:
        if v:
            g = gcd(g, v)
            if g == 1:
                break
    if g > 1:
        row = [v // g for v in row]
    return row


def _to_int(row: Row) -> list[int]:
    den = 1
    for v in row:
        if isinstance(v, Fraction) and v.denominator != 1:
            den = lcm(den, v.denominator)
    return _primitive([int(v * den) for v in row])


def echelon(rows: Sequence[Row], ncols: int | None = None) -> tuple[list[list[int]], list[int]]:
    """Integer row echelon form of ``rows``; returns (nonzero rows, pivot columns)."""
    work = [_to_int(r) for r in rows]
    if ncols is None:
        ncols = len(work[0]) if work else 0
    work = [r for r in work if any(r)]
    out: list[list[int]] = []
    pivots: list[int] = []
    for col in range(ncols):
        if not work:
            break
        k = next((i for i, r in enumerate(work) if r[col]), None)
        if k is None:
            continue
        prow = work.pop(k)
        p = prow[col]
        rest = []
        for r in work:
            f = r[col]
            if f:
                g = gcd(p, f)
                a, b = p // g, f // g
                r = _primitive([a * u - b * v for u, v in zip(r, prow)])
                if not any(r):
                    continue
            rest.append(r)
        work = rest
        out.append(prow)
        pivots.append(col)
    return out, pivots


def rref(rows: Sequence[Row], ncols: int | None = None) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form (nonzero rows only) and pivot columns."""
    ech, pivots = echelon(rows, ncols)
    for i in range(len(ech) - 1, -1, -1):
        pc = pivots[i]
        p = ech[i][pc]
        for j in range(i):
            f = ech[j][pc]
            if f:
                g = gcd(p, f)
                a, b = p // g, f // g
                ech[j] = _primitive([a * u - b * v for u, v in zip(ech[j], ech[i])])
    return [[Fraction(v, r[pc]) for v in r] for r, pc in zip(ech, pivots)], pivots


def rank(rows: Sequence[Row], ncols: int | None = None) -> int:
    return len(echelon(rows, ncols)[1])


def nullspace(rows: Sequence[Row], ncols: int) -> list[list[Fraction]]:
    """Basis of ``{v : r·v = 0 for every row r}``, one vector per free column."""
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in zip(red, pivots):
            v[pc] = -r[fc]
        basis.append(v)
    return basis


def in_span(basis_rref: tuple[list[list[Fraction]], list[int]], v: Row) -> bool:
    """Membership test against a precomputed :func:`rref`."""
    red, pivots = basis_rref
    w = [Fraction(x) for x in v]
    for r, pc in zip(red, pivots):
        f = w[pc]
        if f:
            w = [a - f * b for a, b in zip(w, r)]
    return not any(w)


def reduce_mod(basis_rref: tuple[list[list[Fraction]], list[int]], v: Row) -> list[Fraction]:
    """Reduce ``v`` modulo the row space; pivot coordinates of the result vanish."""
    red, pivots = basis_rref
    w = [Fraction(x) for x in v]
    for r, pc in zip(red, pivots):
        f = w[pc]
        if f:
            w = [a - f * b for a, b in zip(w, r)]
    return w


def solve_left(rows: Sequence[Row], target: Row) -> list[Fraction] | None:
    """Coefficients ``c`` with ``sum c_i rows_i == target``, or None if unsolvable."""
    n = len(rows)
    ncols = len(target)
    # transpose so that unknowns are columns: rows^T c = target
    aug = [[Fraction(rows[i][j]) for i in range(n)] + [Fraction(target[j])] for j in range(ncols)]
    red, pivots = rref(aug, n + 1)
    if n in pivots:
        return None
    c = [Fraction(0)] * n
    for r, pc in zip(red, pivots):
        c[pc] = r[n]
    return c
