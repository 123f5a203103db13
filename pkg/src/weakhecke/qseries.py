"""Truncated Fourier-Laurent expansions in q = e^{2 pi i z} with exact rational coefficients.

A :class:`FourierSeries` knows its coefficients c(n) exactly for
``-pole_order <= n < precision`` and nothing beyond.  Every operation tracks
the range it can actually determine and never extrapolates past it.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from math import comb, lcm
from typing import Iterable, Iterator, Mapping


class PrecisionError(ValueError):
    """Raised when a computation needs more known coefficients than supplied.

    ``required`` carries the minimum input precision that would succeed.
    """

    def __init__(self, message: str, required: int | None = None):
        super().__init__(message)
        self.required = required


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def format_rational(x: Fraction) -> str:
    """Canonical text form ``num/den``; the sign sits on the numerator."""
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    s = s.strip()
    if "/" in s:
        num, den = s.split("/")
        return Fraction(int(num), int(den))
    return Fraction(int(s))


class FourierSeries:
    """Immutable truncated q-expansion of a (weakly holomorphic) form.

    ``coeffs`` is sparse: only nonzero coefficients are stored.  ``pole_order``
    is re-tightened on construction, so ``c(-pole_order) != 0`` unless the
    pole order is zero.
    """

    __slots__ = ("weight", "pole_order", "precision", "_coeffs")

    def __init__(self, weight: int, coeffs: Mapping[int, object], precision: int,
                 pole_order: int | None = None):
        if weight % 2:
            raise ValueError(f"weight must be even, got {weight}")
        clean = {}
        for n, c in coeffs.items():
            n = int(n)
            c = as_fraction(c)
            if c == 0:
                continue
            if n >= precision:
                raise ValueError(f"coefficient at q^{n} lies beyond precision {precision}")
            clean[n] = c
        low = min(clean) if clean else 0
        if pole_order is not None and low < -pole_order:
            raise ValueError(f"coefficient at q^{low} exceeds declared pole order {pole_order}")
        pole = max(-low, 0)
        if precision <= -pole:
            # nothing nonzero is known; keep the range non-empty
            pole = 1 - precision
        self.weight = weight
        self.pole_order = pole
        self.precision = precision
        self._coeffs = dict(sorted(clean.items()))

    # -- construction helpers -------------------------------------------------

    @classmethod
    def zero(cls, weight: int, precision: int) -> "FourierSeries":
        return cls(weight, {}, precision)

    @classmethod
    def one(cls, precision: int) -> "FourierSeries":
        return cls(0, {0: 1}, precision)

    @classmethod
    def monomial(cls, n: int, weight: int = 0, precision: int | None = None,
                 coeff=1) -> "FourierSeries":
        """``coeff * q^n``, known exactly up to ``precision`` (default n + 1)."""
        if precision is None:
            precision = n + 1
        return cls(weight, {n: coeff}, precision)

    @classmethod
    def from_list(cls, weight: int, values: Iterable, start: int = 0,
                  precision: int | None = None) -> "FourierSeries":
        values = list(values)
        if precision is None:
            precision = start + len(values)
        return cls(weight, {start + i: v for i, v in enumerate(values)}, precision)

    # -- access ---------------------------------------------------------------

    def __getitem__(self, n: int) -> Fraction:
        if n >= self.precision:
            raise PrecisionError(f"c({n}) is unknown: precision is {self.precision}",
                                 required=n + 1)
        return self._coeffs.get(n, Fraction(0))

    def items(self) -> Iterator[tuple[int, Fraction]]:
        return iter(self._coeffs.items())

    def coefficients(self, start: int | None = None, stop: int | None = None) -> list[Fraction]:
        """Dense list of c(n) for start <= n < stop."""
        start = -self.pole_order if start is None else start
        stop = self.precision if stop is None else stop
        if stop > self.precision:
            raise PrecisionError(f"c({stop - 1}) is unknown: precision is {self.precision}",
                                 required=stop)
        get = self._coeffs.get
        zero = Fraction(0)
        return [get(n, zero) for n in range(start, stop)]

    @property
    def valuation(self) -> int | None:
        """Smallest exponent with a nonzero known coefficient, or None."""
        return next(iter(self._coeffs), None)

    @property
    def principal_part(self) -> dict[int, Fraction]:
        return {n: c for n, c in self._coeffs.items() if n < 0}

    def is_zero(self) -> bool:
        return not self._coeffs

    def truncate(self, precision: int) -> "FourierSeries":
        if precision > self.precision:
            raise PrecisionError(f"cannot raise precision {self.precision} to {precision}",
                                 required=precision)
        return FourierSeries(self.weight, {n: c for n, c in self._coeffs.items() if n < precision},
                             precision)

    def with_weight(self, weight: int) -> "FourierSeries":
        return FourierSeries(weight, self._coeffs, self.precision)

    def agrees(self, other: "FourierSeries", through: int | None = None) -> bool:
        """Coefficientwise equality on the shared known range (or up to ``through``)."""
        top = min(self.precision, other.precision)
        if through is not None:
            if through >= top:
                raise PrecisionError(f"cannot compare through q^{through}: shared precision {top}",
                                     required=through + 1)
            top = through + 1
        keys = {n for n in self._coeffs if n < top} | {n for n in other._coeffs if n < top}
        return all(self._coeffs.get(n, 0) == other._coeffs.get(n, 0) for n in keys)

    def first_difference(self, other: "FourierSeries", through: int) -> int | None:
        keys = sorted({n for n in self._coeffs if n <= through} | {n for n in other._coeffs if n <= through})
        for n in keys:
            if self._coeffs.get(n, 0) != other._coeffs.get(n, 0):
                return n
        return None

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other: "FourierSeries") -> "FourierSeries":
        if not isinstance(other, FourierSeries):
            return NotImplemented
        if self.weight != other.weight:
            raise ValueError(f"cannot add forms of weight {self.weight} and {other.weight}")
        precision = min(self.precision, other.precision)
        out = {n: c for n, c in self._coeffs.items() if n < precision}
        for n, c in other._coeffs.items():
            if n < precision:
                out[n] = out.get(n, 0) + c
        return FourierSeries(self.weight, out, precision)

    def __neg__(self) -> "FourierSeries":
        return FourierSeries(self.weight, {n: -c for n, c in self._coeffs.items()}, self.precision)

    def __sub__(self, other: "FourierSeries") -> "FourierSeries":
        if not isinstance(other, FourierSeries):
            return NotImplemented
        return self + (-other)

    def scale(self, r) -> "FourierSeries":
        r = as_fraction(r)
        return FourierSeries(self.weight, {n: r * c for n, c in self._coeffs.items()}, self.precision)

    def __mul__(self, other):
        if isinstance(other, FourierSeries):
            return series_mul(self, other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, e: int) -> "FourierSeries":
        if e < 0:
            return series_invert(self) ** (-e)
        if e == 0:
            return FourierSeries.one(self.precision)
        result = self
        for _ in range(e - 1):
            result = series_mul(result, self)
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, FourierSeries):
            return NotImplemented
        return (self.weight == other.weight and self.pole_order == other.pole_order
                and self.precision == other.precision and self._coeffs == other._coeffs)

    def __hash__(self):
        return hash((self.weight, self.precision, tuple(self._coeffs.items())))

    def __repr__(self) -> str:
        terms = []
        for n, c in list(self._coeffs.items())[:6]:
            terms.append(f"{c}*q^{n}")
        body = " + ".join(terms) if terms else "0"
        return f"FourierSeries(weight={self.weight}, {body} + O(q^{self.precision}))"

    # -- serialization --------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "weight": self.weight,
            "pole_order": self.pole_order,
            "precision": self.precision,
            "coeffs": {str(n): format_rational(c) for n, c in self._coeffs.items()},
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "FourierSeries":
        try:
            coeffs = {int(n): parse_rational(c) for n, c in data["coeffs"].items()}
            return cls(int(data["weight"]), coeffs, int(data["precision"]),
                       pole_order=int(data["pole_order"]))
        except KeyError as exc:
            raise ValueError(f"form file is missing field {exc}") from None

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "FourierSeries":
        return cls.from_dict(json.loads(text))


def series_add(a: FourierSeries, b: FourierSeries) -> FourierSeries:
    return a + b


def _integer_window(a: FourierSeries, start: int, stop: int) -> tuple[int, list[int]]:
    """Common denominator and integer numerators of c(start..stop-1)."""
    vals = a.coefficients(start, stop)
    den = 1
    for v in vals:
        if v.denominator != 1:
            den = lcm(den, v.denominator)
    return den, [v.numerator * (den // v.denominator) for v in vals]


def series_mul(a: FourierSeries, b: FourierSeries) -> FourierSeries:
    """Cauchy product, known exactly for n < min(a.N - b.p, b.N - a.p)."""
    precision = min(a.precision - b.pole_order, b.precision - a.pole_order)
    lo = -a.pole_order - b.pole_order
    weight = a.weight + b.weight
    if precision <= lo:
        raise PrecisionError("product has no determined coefficients",
                             required=max(a.precision, b.precision) + lo - precision + 1)
    span = precision - lo
    da, xa = _integer_window(a, -a.pole_order, min(a.precision, -a.pole_order + span))
    db, xb = _integer_window(b, -b.pole_order, min(b.precision, -b.pole_order + span))
    nza = [(i, v) for i, v in enumerate(xa) if v]
    out = [0] * span
    for j, w in enumerate(xb):
        if not w:
            continue
        for i, v in nza:
            if i + j >= span:
                break
            out[i + j] += v * w
    den = da * db
    return FourierSeries(weight, {lo + i: Fraction(v, den) for i, v in enumerate(out) if v},
                         precision)


def series_invert(a: FourierSeries, precision: int | None = None) -> FourierSeries:
    """Reciprocal 1/a, known for n < a.precision - 2*v where v is the valuation of a."""
    v = a.valuation
    if v is None:
        raise ValueError("cannot invert a series whose known coefficients all vanish")
    available = a.precision - 2 * v
    if precision is None:
        precision = available
    elif precision > available:
        raise PrecisionError(
            f"inverse to precision {precision} needs input precision {precision + 2 * v}",
            required=precision + 2 * v)
    length = precision + v
    if length <= 0:
        return FourierSeries(-a.weight, {}, precision)
    u = a.coefficients(v, v + length)
    u0 = u[0]
    w = [Fraction(1) / u0]
    for i in range(1, length):
        s = sum((u[j] * w[i - j] for j in range(1, i + 1) if u[j]), Fraction(0))
        w.append(-s / u0)
    return FourierSeries(-a.weight, {i - v: c for i, c in enumerate(w)}, precision)


# -- standard generators -------------------------------------------------------

@lru_cache(maxsize=None)
def bernoulli(m: int) -> Fraction:
    """Bernoulli number B_m (B_1 = -1/2) by the binomial recurrence."""
    if m == 0:
        return Fraction(1)
    if m > 1 and m % 2:
        return Fraction(0)
    s = sum((comb(m + 1, j) * bernoulli(j) for j in range(m)), Fraction(0))
    return -s / (m + 1)


def divisor_sigma_table(r: int, n_max: int) -> list[int]:
    """sigma_r(n) for 0 <= n < n_max (entry 0 is unused and set to 0)."""
    table = [0] * max(n_max, 1)
    for d in range(1, n_max):
        p = d**r
        for n in range(d, n_max, d):
            table[n] += p
    return table


@lru_cache(maxsize=None)
def eisenstein(weight: int, precision: int) -> FourierSeries:
    """Normalized E_weight = 1 - (2*weight/B_weight) sum sigma_{weight-1}(n) q^n."""
    if weight < 4 or weight % 2:
        raise ValueError(f"Eisenstein series need even weight >= 4, got {weight}")
    if precision < 1:
        raise ValueError("precision must be at least 1")
    factor = -Fraction(2 * weight) / bernoulli(weight)
    sig = divisor_sigma_table(weight - 1, precision)
    coeffs = {0: Fraction(1)}
    for n in range(1, precision):
        coeffs[n] = factor * sig[n]
    return FourierSeries(weight, coeffs, precision)


@lru_cache(maxsize=None)
def delta(precision: int) -> FourierSeries:
    """The discriminant (E4^3 - E6^2)/1728 = q - 24q^2 + ..."""
    if precision < 1:
        raise ValueError("precision must be at least 1")
    e4, e6 = eisenstein(4, precision), eisenstein(6, precision)
    return (e4 * e4 * e4 - e6 * e6).scale(Fraction(1, 1728))


@lru_cache(maxsize=None)
def j_invariant(precision: int) -> FourierSeries:
    """Klein's j = E4^3/Delta = q^-1 + 744 + 196884q + ..."""
    e4 = eisenstein(4, precision + 1)
    return e4 * e4 * e4 * series_invert(delta(precision + 2))


@lru_cache(maxsize=None)
def delta_power(e: int, precision: int) -> FourierSeries:
    """Delta^e for any integer e, known for n < precision."""
    if e >= 0:
        return delta(precision) ** e if e else FourierSeries.one(precision)
    p = -e
    return series_invert(delta(precision + 2 * p) ** p, precision)
