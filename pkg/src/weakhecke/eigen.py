"""Hecke action on M^!_{2k} / D^{2k-1}(S^!_{2-2k}) and weakly holomorphic eigenforms.

The quotient is modelled on the slice of forms with pole order <= P.  The
degenerate forms in that slice are exactly D^{2k-1} of the weak cusp forms
of weight 2-2k with pole order <= P, because D^{2k-1} preserves pole order.
Once P is large enough the slice surjects onto the quotient and its image
has dimension 2 dim M_{2k}; the model checks this rather than assuming it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .linalg import (charpoly, factor_rational, identity, nullspace, poly_eval_matrix, poly_mul,
                     rref, solve_left)
from .operators import bol, hecke
from .pairing import DegeneracyReport, is_degenerate
from .qseries import FourierSeries, PrecisionError, format_rational
from .spaces import (EchelonBasis, certificate_bound, holomorphic_basis, holomorphic_dimension,
                     membership, weak_basis, weak_cusp_basis)


class StabilizationError(ValueError):
    """The slice quotient does not have dimension 2 dim M_{2k}; P is too small."""

    def __init__(self, k: int, max_pole: int, found: int, expected: int):
        super().__init__(
            f"quotient of weight {2 * k} slice with pole <= {max_pole} has dimension {found}, "
            f"expected {expected}; increase the pole bound")
        self.found = found
        self.expected = expected


def quotient_precision(k: int, max_pole: int, max_m: int = 3) -> int:
    """Precision letting a model at pole P apply T_m for every m <= max_m."""
    need = certificate_bound(2 * k, max_pole + 1) + 1
    for m in range(1, max_m + 1):
        need = max(need, m * certificate_bound(2 * k, m * max_pole) + 1)
    return need


def _slice_codimension(k: int, max_pole: int, precision: int) -> int:
    slice_ = weak_basis(2 * k, max_pole, precision)
    gens = weak_cusp_basis(2 - 2 * k, max_pole, precision)
    return slice_.dimension - gens.dimension


@dataclass(frozen=True)
class QuotientModel:
    k: int
    max_pole: int
    precision: int
    slice: EchelonBasis
    generators: tuple[FourierSeries, ...]
    relations: tuple[tuple[Fraction, ...], ...]
    relation_pivots: tuple[int, ...]
    free: tuple[int, ...]

    @property
    def weight(self) -> int:
        return 2 * self.k

    @property
    def dimension(self) -> int:
        return len(self.free)

    def _reduced_slice_coords(self, f: FourierSeries) -> list[Fraction]:
        if f.pole_order > self.max_pole:
            raise ValueError(f"form has pole order {f.pole_order} > slice bound {self.max_pole}")
        v = membership(f, self.slice)
        for row, c in zip(self.relations, self.relation_pivots):
            if v[c]:
                t = v[c]
                v = [a - t * b for a, b in zip(v, row)]
        return v

    def coordinates(self, f: FourierSeries) -> list[Fraction]:
        """Coordinates of the class [f]; degenerate forms map to zero."""
        v = self._reduced_slice_coords(f)
        return [v[i] for i in self.free]

    def section(self, coords) -> FourierSeries:
        """Canonical representative: a combination of the non-eliminated slice elements."""
        out = FourierSeries.zero(self.weight, self.precision)
        for c, i in zip(coords, self.free):
            if c:
                out = out + self.slice[i].scale(c)
        return out

    def is_zero_class(self, f: FourierSeries) -> bool:
        return not any(self.coordinates(f))


@lru_cache(maxsize=None)
def build_quotient(k: int, max_pole: int, precision: int | None = None,
                   check_next: bool = True) -> QuotientModel:
    """Model of the quotient on the slice {pole order <= max_pole} of weight 2k."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if max_pole < 1:
        raise ValueError("the pole bound must be at least 1")
    if precision is None:
        precision = quotient_precision(k, max_pole)
    need = certificate_bound(2 * k, max_pole + (1 if check_next else 0)) + 1
    if precision < need:
        raise PrecisionError(f"quotient model needs precision >= {need}", required=need)
    expected = 2 * holomorphic_dimension(2 * k)
    slice_ = weak_basis(2 * k, max_pole, precision)
    gens = tuple(bol(h, k) for h in weak_cusp_basis(2 - 2 * k, max_pole, precision))
    rows = [membership(g, slice_) for g in gens]
    red, pivots = rref(rows)
    free = tuple(i for i in range(slice_.dimension) if i not in pivots)
    if len(free) != expected:
        raise StabilizationError(k, max_pole, len(free), expected)
    if check_next:
        nxt = _slice_codimension(k, max_pole + 1, precision)
        if nxt != expected:
            raise StabilizationError(k, max_pole + 1, nxt, expected)
    return QuotientModel(k, max_pole, precision, slice_, gens,
                         tuple(tuple(r) for r in red), tuple(pivots), free)


def smallest_stable_pole(k: int, limit: int = 20) -> int:
    """Least P >= 1 at which the slice quotient reaches 2 dim M_{2k} and stays there at P+1."""
    expected = 2 * holomorphic_dimension(2 * k)
    for P in range(1, limit + 1):
        N = certificate_bound(2 * k, P + 1) + 1
        if _slice_codimension(k, P, N) == expected and _slice_codimension(k, P + 1, N) == expected:
            return P
    raise StabilizationError(k, limit, -1, expected)


def _transpose(a):
    return [list(r) for r in zip(*a)] if a else []


@lru_cache(maxsize=None)
def _hecke_on_quotient(model: QuotientModel, m: int) -> tuple[tuple[Fraction, ...], ...]:
    d = model.dimension
    if m == 1:
        return tuple(tuple(r) for r in identity(d))
    need = m * certificate_bound(model.weight, m * model.max_pole) + 1
    if model.precision < need:
        raise PrecisionError(f"T_{m} on the quotient with pole <= {model.max_pole} "
                             f"needs model precision >= {need}", required=need)
    big = build_quotient(model.k, m * model.max_pole,
                         certificate_bound(model.weight, m * model.max_pole + 1) + 1)
    for g in model.generators:
        if any(big.coordinates(hecke(g, m))):
            raise RuntimeError(f"T_{m} does not preserve the degenerate subspace: "
                               "well-definedness check failed")
    if d == 0:
        return ()
    lifts = [model.slice[i] for i in model.free]
    change = [big.coordinates(f) for f in lifts]
    images = [big.coordinates(hecke(f, m)) for f in lifts]
    rows = solve_left(change, images)  # row i = image of basis vector i
    return tuple(tuple(r) for r in _transpose(rows))


def hecke_on_quotient(model: QuotientModel, m: int) -> list[list[Fraction]]:
    """Matrix of [f] -> [f|T_m] in quotient coordinates; column j is the image of e_j."""
    return [list(r) for r in _hecke_on_quotient(model, m)]


def holomorphic_hecke_matrix(weight: int, m: int, precision: int | None = None) -> list[list[Fraction]]:
    """T_m on M_weight in its echelon basis (column convention)."""
    bound = certificate_bound(weight, 0)
    if precision is None:
        precision = m * bound + 1
    basis = holomorphic_basis(weight, precision)
    cols = [membership(hecke(b, m), basis, through=bound) for b in basis]
    return _transpose(cols)


@dataclass(frozen=True)
class EigenClass:
    factor: tuple[Fraction, ...]
    multiplicity: int
    eigenvalue: Fraction | None
    subspace: tuple[tuple[Fraction, ...], ...]
    representatives: tuple[FourierSeries, ...]

    @property
    def representative(self) -> FourierSeries | None:
        return self.representatives[0] if self.representatives else None

    def to_dict(self) -> dict:
        return {
            "charpoly_factor": [format_rational(c) for c in self.factor],
            "eigenvalue": format_rational(self.eigenvalue) if self.eigenvalue is not None else None,
            "multiplicity": self.multiplicity,
            "representative": self.representative.to_dict() if self.representative else None,
            "representatives": [r.to_dict() for r in self.representatives],
        }


def _sort_key(cls: EigenClass):
    if cls.eigenvalue is not None:
        return (0, cls.eigenvalue, 1, ())
    return (1, Fraction(0), len(cls.factor) - 1, tuple(cls.factor))


def eigenforms(model: QuotientModel, m: int) -> list[EigenClass]:
    """Eigenclasses of T_m on the quotient.

    Rational eigenvalues come with a basis of eigenvectors; irrational ones
    are reported through their irreducible factor and generalized eigenspace.
    """
    a = hecke_on_quotient(model, m)
    if not a:
        return []
    classes = []
    for fac, mult in factor_rational(charpoly(a)):
        if len(fac) == 2:
            lam = -fac[1]
            shifted = [[x - (lam if i == j else 0) for j, x in enumerate(row)]
                       for i, row in enumerate(a)]
            space = nullspace(shifted)
            eigenvalue = lam
        else:
            p = [Fraction(1)]
            for _ in range(mult):
                p = poly_mul(p, fac)
            space = nullspace(poly_eval_matrix(p, a))
            eigenvalue = None
        canon, _ = rref(space)
        reps = tuple(model.section(v) for v in canon)
        classes.append(EigenClass(tuple(fac), mult, eigenvalue,
                                  tuple(tuple(v) for v in canon), reps))
    return sorted(classes, key=_sort_key)


def eigenreport(model: QuotientModel, m: int) -> dict:
    return {
        "weight": model.weight,
        "m": m,
        "quotient_dim": model.dimension,
        "classes": [c.to_dict() for c in eigenforms(model, m)],
    }


def verify_eigen(f: FourierSeries, k: int, m: int, eigenvalue) -> DegeneracyReport:
    """Decide f|T_m == eigenvalue * f modulo D^{2k-1}(S^!_{2-2k}); truthy iff it holds."""
    if f.weight != 2 * k:
        raise ValueError(f"form has weight {f.weight}, expected {2 * k}")
    lam = Fraction(eigenvalue)
    P = max(f.pole_order, 0)
    need = m * certificate_bound(2 * k, m * P) + 1
    if f.precision < need:
        raise PrecisionError(f"verifying T_{m} needs precision >= {need}", required=need)
    diff = hecke(f, m) - f.scale(lam)
    return is_degenerate(diff, max_pole=m * P)
