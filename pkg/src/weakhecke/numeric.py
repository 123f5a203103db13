"""Floating-point quadrature of the Petersson integrand over the truncated fundamental domain.

Only used as corroboration of the exact results.  Pairs whose integral over
the full fundamental domain diverges are refused instead of evaluated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from numpy.polynomial.legendre import leggauss

from .operators import hecke
from .qseries import FourierSeries, PrecisionError

Y_FLOOR = math.sqrt(3) / 2


class DivergentIntegralError(ValueError):
    def __init__(self, mode: int):
        super().__init__(f"the integral diverges as T -> infinity: Fourier mode q^{mode} "
                         "occurs in both forms and does not decay")
        self.mode = mode


class QuadratureError(RuntimeError):
    def __init__(self, previous: complex, last: complex):
        super().__init__(f"quadrature did not converge: last two levels gave {previous!r} and {last!r}")
        self.previous = previous
        self.last = last


@dataclass(frozen=True)
class QuadratureSpec:
    T: float = 3.0
    nx: int = 2
    ny_per_unit: int = 2
    order: int = 20
    length: int | None = None
    rtol: float = 1e-13
    atol: float = 1e-17
    max_levels: int = 4

    def __post_init__(self):
        if self.T <= 1:
            raise ValueError(f"truncation height must exceed 1, got {self.T}")


@dataclass(frozen=True)
class InnerResult:
    value: complex
    T: float
    nx: int
    ny: int
    order: int
    length: int
    estimated_error: float

    def to_dict(self) -> dict:
        return {
            "value": [self.value.real, self.value.imag],
            "T": self.T,
            "grid": {"nx": self.nx, "ny": self.ny, "order": self.order, "length": self.length},
            "estimated_error": self.estimated_error,
        }


def _float_coeffs(f: FourierSeries, length: int) -> np.ndarray:
    return np.array([float(c) for c in f.coefficients(-f.pole_order, length)])


def tail_estimate(f: FourierSeries, y: float, length: int) -> float:
    """Heuristic size of sum_{n >= length} |c(n)| e^{-2 pi n y}.

    Extrapolates geometrically from the ratio of the last two known
    coefficients; not a rigorous bound.
    """
    r = math.exp(-2 * math.pi * y)
    c1 = abs(float(f[length - 1])) if length - 1 >= -f.pole_order else 0.0
    c0 = abs(float(f[length - 2])) if length - 2 >= -f.pole_order else 0.0
    growth = c1 / c0 if c0 else 2.0
    ratio = r * max(growth, 1.0)
    if ratio >= 1:
        return math.inf
    return c1 * r ** (length - 1) * ratio / (1 - ratio)


def choose_length(f: FourierSeries, tol: float, y: float = Y_FLOOR) -> int:
    """Shortest truncation whose tail at height y is below tol/10 (relative to c's scale)."""
    scale = max((abs(float(c)) * math.exp(-2 * math.pi * n * y) for n, c in f.items()
                 if n < f.precision), default=1.0) or 1.0
    for L in range(max(2, -f.pole_order + 2), f.precision + 1):
        if tail_estimate(f, y, L) < tol / 10 * scale:
            return L
    raise PrecisionError(f"series precision {f.precision} is too short for tolerance {tol}",
                         required=f.precision + 10)


def eval_form(f: FourierSeries, z, length: int | None = None):
    """sum_{n=-p}^{L-1} c(n) e^{2 pi i n z}; z may be a scalar or an array."""
    z = np.asarray(z, dtype=complex)
    if np.any(z.imag < Y_FLOOR - 1e-12):
        raise ValueError("evaluation point lies below the fundamental domain (y < sqrt(3)/2)")
    if length is None:
        length = f.precision
    if length > f.precision:
        raise PrecisionError(f"need precision >= {length}", required=length)
    c = _float_coeffs(f, length)
    q = np.exp(2j * np.pi * z)
    acc = np.zeros_like(q)
    for coeff in c[::-1]:
        acc = acc * q + coeff
    out = acc * q ** (-f.pole_order) if f.pole_order else acc
    return out.item() if out.ndim == 0 else out


def divergent_mode(f: FourierSeries, g: FourierSeries) -> int | None:
    """First non-decaying Fourier mode shared by f and g, if any.

    Integrating over a full period in x kills every cross term, so above
    y = 1 only c_f(n) c_g(n) e^{-4 pi n y} survives; n <= 0 does not decay.
    """
    for n in range(-min(f.pole_order, g.pole_order), 1):
        if f[n] and g[n]:
            return n
    return None


def _gl(order: int):
    nodes, weights = leggauss(order)
    return nodes, weights


def _composite(a: float, b: float, panels: int, order: int):
    nodes, weights = _gl(order)
    edges = np.linspace(a, b, panels + 1)
    h = np.diff(edges) / 2
    mid = (edges[:-1] + edges[1:]) / 2
    xs = (mid[:, None] + h[:, None] * nodes[None, :]).ravel()
    ws = (h[:, None] * weights[None, :]).ravel()
    return xs, ws


def _integrate(f, g, k, T, nx, ny, order, lf, lg) -> complex:
    # rectangle 1 <= y <= T: the integrand is periodic in x, so the midpoint
    # rule is spectrally accurate there; Gauss-Legendre panels in y
    npts = nx * order
    xs = -0.5 + (np.arange(npts) + 0.5) / npts
    ys, wy = _composite(1.0, T, ny, order)
    Z = xs[:, None] + 1j * ys[None, :]
    vals = eval_form(f, Z, lf) * np.conj(eval_form(g, Z, lg)) * ys[None, :] ** (2 * k - 2)
    total = vals.sum(axis=0) @ wy / npts
    # curved piece sqrt(1 - x^2) <= y <= 1
    xc, wx = _composite(-0.5, 0.5, nx, order)
    nodes, weights = _gl(order)
    lo = np.sqrt(1 - xc**2)
    half = (1 - lo) / 2
    Yc = (1 + lo)[:, None] / 2 + half[:, None] * nodes[None, :]
    Zc = xc[:, None] + 1j * Yc
    vals = eval_form(f, Zc, lf) * np.conj(eval_form(g, Zc, lg)) * Yc ** (2 * k - 2)
    total += np.einsum("i,i,ij,j->", wx, half, vals, weights)
    return complex(total)


def truncated_inner(f: FourierSeries, g: FourierSeries, T: float | None = None,
                    spec: QuadratureSpec | None = None) -> InnerResult:
    """Integral of f conj(g) y^{2k} dx dy / y^2 over the fundamental domain cut at height T."""
    spec = spec or QuadratureSpec()
    if T is not None:
        spec = replace(spec, T=T)
    if f.weight != g.weight:
        raise ValueError(f"weights differ: {f.weight} and {g.weight}")
    mode = divergent_mode(f, g)
    if mode is not None:
        raise DivergentIntegralError(mode)
    k = f.weight // 2
    if spec.length is not None:
        lf = lg = spec.length
    else:
        lf, lg = choose_length(f, spec.rtol), choose_length(g, spec.rtol)
    nx = spec.nx
    ny = max(1, math.ceil((spec.T - 1) * spec.ny_per_unit))
    prev = _integrate(f, g, k, spec.T, nx, ny, spec.order, lf, lg)
    for _ in range(spec.max_levels):
        nx, ny = 2 * nx, 2 * ny
        cur = _integrate(f, g, k, spec.T, nx, ny, spec.order, lf, lg)
        err = abs(cur - prev)
        if err <= spec.rtol * abs(cur) + spec.atol:
            return InnerResult(cur, spec.T, nx, ny, spec.order, max(lf, lg), err)
        prev = cur
    raise QuadratureError(prev, cur)


@dataclass(frozen=True)
class HermitianReport:
    m: int
    left: complex
    right: complex

    @property
    def gap(self) -> float:
        scale = max(abs(self.left), abs(self.right))
        return abs(self.left - self.right) / scale if scale else 0.0

    def to_dict(self) -> dict:
        return {"m": self.m, "left": [self.left.real, self.left.imag],
                "right": [self.right.real, self.right.imag], "relative_gap": self.gap}


def check_hermitian_numeric(f: FourierSeries, g: FourierSeries, m: int,
                            spec: QuadratureSpec | None = None) -> HermitianReport:
    """Compare <f|T_m, g>_T with <f, g|T_m>_T for cusp forms f, g."""
    for h in (f, g):
        if h.pole_order or h[0]:
            raise ValueError("numeric Hermitian check needs cusp forms")
    left = truncated_inner(hecke(f, m), g, spec=spec).value
    right = truncated_inner(f, hecke(g, m), spec=spec).value
    return HermitianReport(m, left, right)
