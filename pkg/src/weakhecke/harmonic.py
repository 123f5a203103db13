"""Harmonic Maass forms of weight 2-2k as formal Fourier coefficient data.

Coefficients are real rationals times integer powers of a formal symbol pi,
so complex conjugation acts trivially and the xi, D^{2k-1} and flipping
operators reduce to exact manipulations of coefficient tables.  The
incomplete-gamma shape of the non-holomorphic part is never evaluated.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Mapping

from .qseries import FourierSeries, as_fraction, format_rational, parse_rational


class ScalarPi:
    """Finite sum of r_e * pi^e with rational r_e and integer e."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, object] | None = None):
        clean = {}
        for e, r in (terms or {}).items():
            r = as_fraction(r)
            if r:
                clean[int(e)] = r
        self._terms = dict(sorted(clean.items()))

    @classmethod
    def rational(cls, r) -> "ScalarPi":
        return cls({0: r})

    @classmethod
    def pi_power(cls, e: int, r=1) -> "ScalarPi":
        return cls({e: r})

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = ScalarPi.rational(other)
        if not isinstance(other, ScalarPi):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(tuple(self._terms.items()))

    def __add__(self, other) -> "ScalarPi":
        if isinstance(other, (int, Fraction)):
            other = ScalarPi.rational(other)
        out = dict(self._terms)
        for e, r in other._terms.items():
            out[e] = out.get(e, 0) + r
        return ScalarPi(out)

    __radd__ = __add__

    def __neg__(self) -> "ScalarPi":
        return ScalarPi({e: -r for e, r in self._terms.items()})

    def __sub__(self, other) -> "ScalarPi":
        return self + (-other)

    def __mul__(self, other) -> "ScalarPi":
        if isinstance(other, (int, Fraction)):
            return ScalarPi({e: r * other for e, r in self._terms.items()})
        if not isinstance(other, ScalarPi):
            return NotImplemented
        out: dict[int, Fraction] = {}
        for e1, r1 in self._terms.items():
            for e2, r2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + r1 * r2
        return ScalarPi(out)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"{r}*pi^{e}" if e else str(r) for e, r in self._terms.items())

    def to_dict(self) -> dict[str, str]:
        return {str(e): format_rational(r) for e, r in self._terms.items()}

    @classmethod
    def from_dict(cls, data: Mapping[str, str]) -> "ScalarPi":
        return cls({int(e): parse_rational(r) for e, r in data.items()})


ZERO = ScalarPi()


def four_pi_power(e: int) -> ScalarPi:
    """(4 pi)^e for any integer e."""
    return ScalarPi.pi_power(e, Fraction(4) ** e)


def _clean(table: Mapping[int, object]) -> dict[int, ScalarPi]:
    out = {}
    for n, c in table.items():
        if not isinstance(c, ScalarPi):
            c = ScalarPi.rational(c)
        if c:
            out[int(n)] = c
    return dict(sorted(out.items()))


@dataclass(frozen=True)
class PiSeries:
    """Finitely supported q-expansion with ScalarPi coefficients."""

    weight: int
    coeffs: dict[int, ScalarPi] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _clean(self.coeffs))

    def scale(self, s: ScalarPi) -> "PiSeries":
        return PiSeries(self.weight, {n: s * c for n, c in self.coeffs.items()})

    def __getitem__(self, n: int) -> ScalarPi:
        return self.coeffs.get(n, ZERO)

    def is_zero(self) -> bool:
        return not self.coeffs

    @classmethod
    def from_series(cls, f: FourierSeries) -> "PiSeries":
        return cls(f.weight, {n: ScalarPi.rational(c) for n, c in f.items()})


@dataclass(frozen=True)
class FormalHarmonicForm:
    """Coefficient tables c^+(n) and c^-(n) of a weight 2-2k harmonic form.

    ``minus[0]`` multiplies y^{2k-1}; ``minus[n]`` for n != 0 multiplies
    Gamma(2k-1, -4 pi n y) q^n.  Both tables are finitely supported.
    """

    k: int
    plus: dict[int, ScalarPi] = field(default_factory=dict)
    minus: dict[int, ScalarPi] = field(default_factory=dict)

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        object.__setattr__(self, "plus", _clean(self.plus))
        object.__setattr__(self, "minus", _clean(self.minus))

    @property
    def weight(self) -> int:
        return 2 - 2 * self.k

    def is_weakly_holomorphic(self) -> bool:
        return not self.minus

    @classmethod
    def from_series(cls, h: FourierSeries) -> "FormalHarmonicForm":
        k, r = divmod(2 - h.weight, 2)
        if r or k < 1:
            raise ValueError(f"weight {h.weight} is not of the form 2-2k with k >= 1")
        return cls(k, {n: ScalarPi.rational(c) for n, c in h.items()})

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "plus": {str(n): c.to_dict() for n, c in self.plus.items()},
            "minus": {str(n): c.to_dict() for n, c in self.minus.items()},
        }

    @classmethod
    def from_dict(cls, data) -> "FormalHarmonicForm":
        return cls(int(data["k"]),
                   {int(n): ScalarPi.from_dict(c) for n, c in data.get("plus", {}).items()},
                   {int(n): ScalarPi.from_dict(c) for n, c in data.get("minus", {}).items()})

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "FormalHarmonicForm":
        return cls.from_dict(json.loads(text))


def xi_op(F: FormalHarmonicForm) -> PiSeries:
    """xi_{2-2k} F = (2k-1) c^-(0) - (4pi)^{2k-1} sum_{n != 0} n^{2k-1} c^-(-n) q^n."""
    e = 2 * F.k - 1
    out = {}
    if 0 in F.minus:
        out[0] = F.minus[0] * e
    factor = -four_pi_power(e)
    for n, c in F.minus.items():
        if n != 0:
            out[-n] = factor * c * Fraction((-n) ** e)
    return PiSeries(2 * F.k, out)


def d_op(F: FormalHarmonicForm) -> PiSeries:
    """D^{2k-1} F = -(2k-1)!/(4pi)^{2k-1} c^-(0) + sum n^{2k-1} c^+(n) q^n."""
    e = 2 * F.k - 1
    out = {n: c * Fraction(n**e) for n, c in F.plus.items() if n != 0}
    if 0 in F.minus:
        out[0] = four_pi_power(-e) * F.minus[0] * (-factorial(e))
    return PiSeries(2 * F.k, out)


def flip(F: FormalHarmonicForm) -> FormalHarmonicForm:
    """Flipping operator on coefficients.

    c^+ -> -(2k-2)! c^-(-n) and c^- -> -c^+(-n)/(2k-2)! off the constant
    term; both constant slots change sign.
    """
    fac = factorial(2 * F.k - 2)
    plus = {-n: c * (-fac) for n, c in F.minus.items() if n != 0}
    minus = {-n: c * Fraction(-1, fac) for n, c in F.plus.items() if n != 0}
    if 0 in F.plus:
        plus[0] = -F.plus[0]
    if 0 in F.minus:
        minus[0] = -F.minus[0]
    return FormalHarmonicForm(F.k, plus, minus)
