"""Exact dense linear algebra over the rationals on lists of Fractions."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import sympy

Matrix = list[list[Fraction]]


def rref(rows: Sequence[Sequence[Fraction]]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form, scanning columns left to right.

    Returns the nonzero rows and their pivot columns.
    """
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        pivot_row = m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], pivot_row)]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    return len(rref(rows)[1])


def nullspace(a: Sequence[Sequence[Fraction]], ncols: int | None = None) -> Matrix:
    """Basis of {x : a x = 0}, one vector per free column."""
    ncols = len(a[0]) if a else (ncols or 0)
    red, pivots = rref(a)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def solve_left(basis_rows: Matrix, target_rows: Matrix) -> Matrix:
    """Coordinates X with X @ basis_rows == target_rows (basis rows independent)."""
    n = len(basis_rows)
    width = len(basis_rows[0])
    out = []
    # solve basis_rows^T x = t^T by augmenting
    at = [[basis_rows[i][c] for i in range(n)] for c in range(width)]
    for t in target_rows:
        aug = [at[c] + [t[c]] for c in range(width)]
        red, pivots = rref(aug)
        if n in pivots:
            raise ValueError("target is not in the row span")
        x = [Fraction(0)] * n
        for row, pc in zip(red, pivots):
            x[pc] = row[n]
        out.append(x)
    return out


def charpoly(a: Matrix) -> list[Fraction]:
    """Monic characteristic polynomial det(xI - A), coefficients from x^n down to x^0.

    Faddeev-LeVerrier recursion; exact over the rationals.
    """
    n = len(a)
    coeffs = [Fraction(1)]
    m = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        m = matmul(a, m) if k > 1 else [row[:] for row in identity(n)]
        if k > 1:
            c_prev = coeffs[-1]
            for i in range(n):
                m[i][i] += c_prev
        am = matmul(a, m)
        c = -sum((am[i][i] for i in range(n)), Fraction(0)) / k
        coeffs.append(c)
    return coeffs


def factor_rational(coeffs: Sequence[Fraction]) -> list[tuple[list[Fraction], int]]:
    """Factor a monic rational polynomial into monic irreducibles with multiplicities."""
    x = sympy.Symbol("x")
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in coeffs], x, domain="QQ")
    _, factors = poly.factor_list()
    out = []
    for fac, mult in factors:
        fac = fac.monic()
        cs = [Fraction(int(c.p), int(c.q)) for c in fac.all_coeffs()]
        out.append((cs, int(mult)))
    return out


def poly_eval_matrix(coeffs: Sequence[Fraction], a: Matrix) -> Matrix:
    """p(A) by Horner, coefficients from the top degree down."""
    n = len(a)
    result = [[Fraction(0)] * n for _ in range(n)]
    for c in coeffs:
        result = matmul(result, a)
        for i in range(n):
            result[i][i] += c
    return result


def poly_mul(p: Sequence[Fraction], q: Sequence[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out
