"""Echelon bases of pole-bounded slices of weakly holomorphic forms on SL2(Z).

A form of weight w with pole order at most P becomes holomorphic of weight
w + 12P after multiplication by Delta^P, and a holomorphic form of weight W
vanishing to order > W/12 at the cusp is zero.  Hence two forms in the
slice that agree through exponent ``certificate_bound(w, P)`` are equal,
which is what makes every membership verdict here exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .linalg import rref
from .qseries import FourierSeries, PrecisionError, delta_power, eisenstein


class NotInSpan(Exception):
    """The residual after projecting onto the basis is nonzero at ``exponent``."""

    def __init__(self, exponent: int):
        super().__init__(f"not in span: residual is nonzero at q^{exponent}")
        self.exponent = exponent


def certificate_bound(weight: int, max_pole: int) -> int:
    """Exponent B such that vanishing at all n <= B forces a slice form to be zero."""
    return max_pole + weight // 12 + 1


def holomorphic_dimension(weight: int) -> int:
    if weight < 0 or weight % 2:
        return 0
    if weight % 12 == 2:
        return weight // 12
    return weight // 12 + 1


@dataclass(frozen=True)
class EchelonBasis:
    weight: int
    max_pole: int
    precision: int
    elements: tuple[FourierSeries, ...]
    pivots: tuple[int, ...]

    @property
    def dimension(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i: int) -> FourierSeries:
        return self.elements[i]

    @property
    def bound(self) -> int:
        return certificate_bound(self.weight, self.max_pole)

    def combination(self, coords) -> FourierSeries:
        out = FourierSeries.zero(self.weight, self.precision)
        for c, b in zip(coords, self.elements):
            if c:
                out = out + b.scale(c)
        return out

    def to_dict(self) -> dict:
        return {
            "weight": self.weight,
            "max_pole": self.max_pole,
            "precision": self.precision,
            "pivots": list(self.pivots),
            "elements": [b.to_dict() for b in self.elements],
        }

    @classmethod
    def from_dict(cls, data) -> "EchelonBasis":
        elements = tuple(FourierSeries.from_dict(e) for e in data["elements"])
        return cls(int(data["weight"]), int(data["max_pole"]), int(data["precision"]),
                   elements, tuple(int(p) for p in data["pivots"]))


def _echelonize(forms: list[FourierSeries], weight: int, max_pole: int,
                precision: int) -> EchelonBasis:
    start = -max_pole
    rows = [f.coefficients(start, precision) for f in forms]
    red, cols = rref(rows)
    elements = tuple(
        FourierSeries(weight, {start + i: c for i, c in enumerate(row)}, precision)
        for row in red)
    return EchelonBasis(weight, max_pole, precision, elements, tuple(start + c for c in cols))


@lru_cache(maxsize=None)
def _eisenstein_power(weight: int, e: int, precision: int) -> FourierSeries:
    if e == 0:
        return FourierSeries.one(precision)
    if e == 1:
        return eisenstein(weight, precision)
    return _eisenstein_power(weight, e - 1, precision) * eisenstein(weight, precision)


def monomials(weight: int, precision: int) -> list[FourierSeries]:
    """All E4^a E6^b with 4a + 6b = weight."""
    out = []
    for b in range(weight // 6 + 1):
        rest = weight - 6 * b
        if rest >= 0 and rest % 4 == 0:
            a = rest // 4
            out.append((_eisenstein_power(4, a, precision)
                        * _eisenstein_power(6, b, precision)).with_weight(weight))
    return out


@lru_cache(maxsize=None)
def holomorphic_basis(weight: int, precision: int) -> EchelonBasis:
    """Echelon basis of M_weight from the E4/E6 monomials."""
    if weight < 0 or weight % 2:
        raise ValueError(f"holomorphic forms need even weight >= 0, got {weight}")
    return _echelonize(monomials(weight, precision), weight, 0, precision)


@lru_cache(maxsize=None)
def weak_basis(weight: int, max_pole: int, precision: int) -> EchelonBasis:
    """Echelon basis of {f in M^!_weight : pole order <= max_pole}.

    Spanned by Delta^{-P} times the monomials of weight ``weight + 12P``.
    """
    if weight % 2:
        raise ValueError(f"weight must be even, got {weight}")
    if max_pole < 0:
        raise ValueError("max_pole must be non-negative")
    need = certificate_bound(weight, max_pole) + 1
    if precision < need:
        raise PrecisionError(
            f"weight {weight} with pole <= {max_pole} needs precision >= {need}", required=need)
    shifted = weight + 12 * max_pole
    if shifted < 0:
        return EchelonBasis(weight, max_pole, precision, (), ())
    inv = delta_power(-max_pole, precision)
    forms = [inv * m for m in monomials(shifted, precision + max_pole)]
    return _echelonize([f.with_weight(weight) for f in forms], weight, max_pole, precision)


@lru_cache(maxsize=None)
def weak_cusp_basis(weight: int, max_pole: int, precision: int) -> EchelonBasis:
    """Kernel of the constant-term functional on ``weak_basis``."""
    full = weak_basis(weight, max_pole, precision)
    with_const = [i for i, b in enumerate(full.elements) if b[0] != 0]
    if not with_const:
        return full
    e = full.elements[with_const[-1]]
    kernel = []
    for i, b in enumerate(full.elements):
        if i == with_const[-1]:
            continue
        c = b[0]
        kernel.append(b - e.scale(c / e[0]) if c else b)
    if not kernel:
        return EchelonBasis(weight, max_pole, precision, (), ())
    return _echelonize(kernel, weight, max_pole, precision)


def membership(f: FourierSeries, basis: EchelonBasis, through: int | None = None) -> list[Fraction]:
    """Exact coordinates of f in the basis.

    Raises :class:`NotInSpan` naming the first exponent n <= ``through``
    (default: the certificate bound) where the residual is nonzero.
    """
    if f.weight != basis.weight:
        raise ValueError(f"form has weight {f.weight}, basis has weight {basis.weight}")
    if through is None:
        through = basis.bound
    if f.pole_order > basis.max_pole:
        raise NotInSpan(-f.pole_order)
    need = through + 1
    if f.precision < need or basis.precision < need:
        raise PrecisionError(
            f"membership check through q^{through} needs precision >= {need} "
            f"(form has {f.precision}, basis has {basis.precision})", required=need)
    coords = [f[p] for p in basis.pivots]
    for n in range(-basis.max_pole, through + 1):
        r = f[n] - sum((c * b[n] for c, b in zip(coords, basis.elements) if c), Fraction(0))
        if r != 0:
            raise NotInSpan(n)
    return coords
