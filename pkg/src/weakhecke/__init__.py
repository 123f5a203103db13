"""Exact arithmetic for weakly holomorphic modular forms of even weight on SL2(Z)."""

from .eigen import (EigenClass, QuotientModel, StabilizationError, build_quotient, eigenforms,
                    hecke_on_quotient, verify_eigen)
from .harmonic import FormalHarmonicForm, ScalarPi, d_op, flip, xi_op
from .operators import bol, hecke
from .pairing import DegeneracyReport, bf_pairing, is_degenerate, pairing_zero
from .qseries import (FourierSeries, PrecisionError, delta, eisenstein, j_invariant, series_add,
                      series_invert, series_mul)
from .spaces import (EchelonBasis, NotInSpan, holomorphic_basis, membership, weak_basis,
                     weak_cusp_basis)

__all__ = [
    "EchelonBasis", "EigenClass", "FormalHarmonicForm", "FourierSeries", "DegeneracyReport",
    "NotInSpan", "PrecisionError", "QuotientModel", "ScalarPi", "StabilizationError",
    "bf_pairing", "bol", "build_quotient", "d_op", "delta", "eigenforms", "eisenstein", "flip",
    "hecke", "hecke_on_quotient", "holomorphic_basis", "is_degenerate", "j_invariant",
    "membership", "pairing_zero", "series_add", "series_invert", "series_mul", "verify_eigen",
    "weak_basis", "weak_cusp_basis", "xi_op",
]
