"""Independent reference computations used to freeze expected values.

Nothing here touches the library's series arithmetic: Delta comes from
the product q * prod (1 - q^n)^24 and Eisenstein series from brute-force
divisor enumeration, all on plain integer/Fraction lists.
"""

from fractions import Fraction

import sympy


def sigma_brute(r, n):
    return sum(d**r for d in range(1, n + 1) if n % d == 0)


def eisenstein_list(weight, length):
    b = sympy.bernoulli(weight)
    factor = -Fraction(2 * weight) / Fraction(int(b.p), int(b.q))
    return [Fraction(1)] + [factor * sigma_brute(weight - 1, n) for n in range(1, length)]


def poly_mul(a, b, length):
    out = [Fraction(0)] * length
    for i, x in enumerate(a[:length]):
        if x:
            for j, y in enumerate(b[: length - i]):
                out[i + j] += x * y
    return out


def delta_product(length):
    """Coefficients of q prod_{n>=1} (1 - q^n)^24 for exponents 0..length-1."""
    series = [0] * length
    series[0] = 1
    for n in range(1, length):
        for _ in range(24):
            for i in range(length - 1, n - 1, -1):
                series[i] -= series[i - n]
    return [Fraction(0)] + [Fraction(c) for c in series[: length - 1]]


def tau(n):
    return delta_product(n + 1)[n]


def hecke_list(coeffs, weight, m, length):
    """T_m on a plain coefficient list (exponents 0..), straight from the divisor-sum formula."""
    out = []
    for n in range(length):
        g = m if n == 0 else sympy.gcd(m, n)
        out.append(sum(Fraction(d) ** (weight - 1) * coeffs[m * n // (d * d)]
                       for d in range(1, int(g) + 1) if g % d == 0))
    return out


def m24_charpoly(m):
    """Characteristic polynomial of T_m on M_24 in the basis E4^6, E4^3 Delta, Delta^2."""
    L = 3 * m + 3
    e4, d = eisenstein_list(4, L), delta_product(L)
    e4_3 = poly_mul(poly_mul(e4, e4, L), e4, L)
    basis = [poly_mul(e4_3, e4_3, L), poly_mul(e4_3, d, L), poly_mul(d, d, L)]
    cols = []
    for b in basis:
        img = hecke_list(b, 24, m, 3)
        # basis is unitriangular in the first three exponents
        coords = [None, None, None]
        rest = list(img)
        for i in range(3):
            coords[i] = rest[i] / basis[i][i]
            rest = [r - coords[i] * x for r, x in zip(rest, basis[i][:3])]
        cols.append(coords)
    M = sympy.Matrix(3, 3, lambda i, j: sympy.Rational(cols[j][i].numerator, cols[j][i].denominator))
    x = sympy.Symbol("x")
    return sympy.Poly(M.charpoly(x).as_expr(), x)
