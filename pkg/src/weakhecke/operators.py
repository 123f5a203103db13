"""Hecke operators T_m and the Bol operator D^{2k-1} on q-expansions."""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .qseries import FourierSeries, PrecisionError


def divisors(n: int) -> list[int]:
    n = abs(n)
    small = [d for d in range(1, int(n**0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def hecke_precision(m: int, input_precision: int) -> int:
    """Largest output precision T_m can certify from ``input_precision`` known terms."""
    return (input_precision - 1) // m + 1


def hecke_input_precision(m: int, output_precision: int) -> int:
    """Input precision needed so T_m f is known for n < output_precision."""
    return m * (output_precision - 1) + 1


def hecke(f: FourierSeries, m: int, precision: int | None = None) -> FourierSeries:
    """f|T_m with c'(n) = sum_{d | (m, n)} d^{w-1} c(mn/d^2), gcd(m, 0) = m."""
    if m < 1:
        raise ValueError(f"Hecke index must be >= 1, got {m}")
    available = hecke_precision(m, f.precision)
    if precision is None:
        precision = available
    elif precision > available:
        need = hecke_input_precision(m, precision)
        raise PrecisionError(
            f"T_{m} to precision {precision} needs input precision >= {need}, got {f.precision}",
            required=need)
    e = f.weight - 1
    powers = {d: Fraction(d) ** e for d in divisors(m)}
    coeffs = {}
    for n in range(-m * f.pole_order, precision):
        g = gcd(m, n) if n else m
        s = Fraction(0)
        for d in divisors(g):
            idx, r = divmod(m * n, d * d)
            if r == 0 and idx >= -f.pole_order:
                c = f[idx]
                if c:
                    s += powers[d] * c
        if s:
            coeffs[n] = s
    return FourierSeries(f.weight, coeffs, precision)


def bol(f: FourierSeries, k: int | None = None) -> FourierSeries:
    """D^{2k-1}: weight 2-2k -> 2k, c(n) -> n^{2k-1} c(n)."""
    if k is None:
        k, r = divmod(2 - f.weight, 2)
        if r or k < 1:
            raise ValueError(f"weight {f.weight} is not of the form 2-2k with k >= 1")
    if f.weight != 2 - 2 * k:
        raise ValueError(f"Bol operator for k={k} needs weight {2 - 2 * k}, got {f.weight}")
    e = 2 * k - 1
    return FourierSeries(2 * k, {n: n**e * c for n, c in f.items() if n != 0}, f.precision)
