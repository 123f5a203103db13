"""Coefficient pairings and the exact test for membership in D^{2k-1}(S^!_{2-2k}).

The pairing {f, g}_0 = sum_{n != 0} c_f(-n) c_g(n) / n^{2k-1} is a finite sum
for weakly holomorphic f, g and is what the regularized inner product
reduces to against degenerate forms, so it is the computable handle on
orthogonality used throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .harmonic import FormalHarmonicForm, ScalarPi
from .operators import bol
from .qseries import FourierSeries, PrecisionError
from .spaces import NotInSpan, certificate_bound, membership, weak_basis


def _check_overlap(f: FourierSeries, g: FourierSeries) -> None:
    if f.precision <= g.pole_order:
        raise PrecisionError(f"pairing needs c_f up to q^{g.pole_order}", required=g.pole_order + 1)
    if g.precision <= f.pole_order:
        raise PrecisionError(f"pairing needs c_g up to q^{f.pole_order}", required=f.pole_order + 1)


def pairing_zero(f: FourierSeries, g: FourierSeries, k: int | None = None) -> Fraction:
    """{f, g}_0 for f, g of weight 2k."""
    if f.weight != g.weight:
        raise ValueError(f"pairing needs equal weights, got {f.weight} and {g.weight}")
    if k is None:
        k = f.weight // 2
    if f.weight != 2 * k:
        raise ValueError(f"forms have weight {f.weight}, not 2k = {2 * k}")
    _check_overlap(f, g)
    e = 2 * k - 1
    total = Fraction(0)
    for n in range(-g.pole_order, f.pole_order + 1):
        if n == 0:
            continue
        a, b = f[-n], g[n]
        if a and b:
            total += a * b / Fraction(n) ** e
    return total


def bf_pairing(f: FourierSeries, G: FormalHarmonicForm | FourierSeries):
    """Bruinier-Funke pairing {f, G} = sum_n c_f(-n) c_G^+(n), n = 0 included.

    Returns a Fraction for a q-series G and a ScalarPi for a formal harmonic G.
    """
    if isinstance(G, FourierSeries):
        if f.weight != 2 - G.weight:
            raise ValueError(f"weights {f.weight} and {G.weight} are not dual")
        _check_overlap(f, G)
        total = Fraction(0)
        for n in range(-G.pole_order, f.pole_order + 1):
            a, b = f[-n], G[n]
            if a and b:
                total += a * b
        return total
    if f.weight != 2 * G.k:
        raise ValueError(f"weights {f.weight} and {G.weight} are not dual")
    total = ScalarPi()
    for n, c in G.plus.items():
        if -n >= f.precision:
            raise PrecisionError(f"pairing needs c_f at q^{-n}", required=-n + 1)
        a = f[-n]
        if a:
            total = total + c * a
    return total


@dataclass(frozen=True)
class DegeneracyReport:
    degenerate: bool
    witness: FourierSeries | None = None
    obstruction_kind: str | None = None
    obstruction_exponent: int | None = None

    def __bool__(self) -> bool:
        return self.degenerate

    def to_dict(self) -> dict:
        obstruction = None
        if self.obstruction_kind is not None:
            obstruction = {"kind": self.obstruction_kind, "exponent": self.obstruction_exponent}
        return {
            "degenerate": self.degenerate,
            "witness": self.witness.to_dict() if self.witness is not None else None,
            "obstruction": obstruction,
        }


def degenerate_precision(weight: int, max_pole: int) -> int:
    """Minimum precision of f for which ``is_degenerate`` can certify its verdict."""
    return certificate_bound(weight, max_pole) + 1


def is_degenerate(f: FourierSeries, max_pole: int | None = None) -> DegeneracyReport:
    """Decide exactly whether f = D^{2k-1}(h) for a weak cusp form h of weight 2-2k.

    The candidate h has c_h(n) = c_f(n)/n^{2k-1}; it is accepted when it
    agrees with a genuine form of weight 2-2k through the certificate bound
    of the weight 2k slice, which forces D^{2k-1} h = f exactly.
    """
    k, r = divmod(f.weight, 2)
    if r or k < 1:
        raise ValueError(f"degeneracy is defined for weight 2k >= 2, got {f.weight}")
    P = f.pole_order if max_pole is None else max(max_pole, f.pole_order)
    bound = certificate_bound(2 * k, P)
    if f.precision <= bound:
        raise PrecisionError(
            f"deciding degeneracy at weight {2 * k}, pole <= {P} needs precision >= {bound + 1}",
            required=bound + 1)
    if f[0] != 0:
        return DegeneracyReport(False, obstruction_kind="constant_term", obstruction_exponent=0)
    e = 2 * k - 1
    candidate = FourierSeries(
        2 - 2 * k,
        {n: c / Fraction(n) ** e for n, c in f.items() if n <= bound},
        bound + 1)
    basis = weak_basis(2 - 2 * k, P, f.precision)
    try:
        coords = membership(candidate, basis, through=bound)
    except NotInSpan as exc:
        return DegeneracyReport(False, obstruction_kind="residual", obstruction_exponent=exc.exponent)
    witness = basis.combination(coords)
    image = bol(witness, k)
    if not image.agrees(f):
        # only possible when f itself is not a modular form
        n = image.first_difference(f, f.precision - 1)
        return DegeneracyReport(False, obstruction_kind="residual", obstruction_exponent=n)
    return DegeneracyReport(True, witness=witness)
