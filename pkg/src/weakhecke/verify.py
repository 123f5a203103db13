"""Named verification suites run by ``weakhecke verify``.

Each suite is split into independent cells (one per weight, or per
weight and Hecke index) so the CLI can farm them out to worker processes.
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .eigen import (build_quotient, hecke_on_quotient, holomorphic_hecke_matrix, quotient_precision,
                    smallest_stable_pole)
from .harmonic import FormalHarmonicForm, ScalarPi, d_op, flip, four_pi_power, xi_op
from .linalg import charpoly, poly_mul
from .operators import bol, hecke, hecke_input_precision
from .pairing import is_degenerate, pairing_zero
from .spaces import certificate_bound, holomorphic_dimension, weak_basis, weak_cusp_basis

SUITES = ("theorem1", "hermitian", "equivariance", "flip", "quotient-dim", "charpoly-square")


@dataclass(frozen=True)
class CellResult:
    suite: str
    cell: str
    passed: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return {"suite": self.suite, "cell": self.cell, "passed": self.passed, "detail": self.detail}


def _theorem1(k: int, max_pole: int) -> CellResult:
    N = certificate_bound(2 * k, max_pole) + 2
    hs = weak_cusp_basis(2 - 2 * k, max_pole, N)
    fs = weak_basis(2 * k, max_pole, N)
    checked = 0
    for h in hs:
        g = bol(h, k)
        for f in fs:
            if pairing_zero(f, g, k) != 0:
                return CellResult("theorem1", f"2k={2 * k}", False, "nonzero pairing")
            checked += 1
        report = is_degenerate(g)
        if not report or not report.witness.agrees(h):
            return CellResult("theorem1", f"2k={2 * k}", False, "round trip failed")
    return CellResult("theorem1", f"2k={2 * k}", True, f"{checked} pairings, {len(hs)} round trips")


def _hermitian(k: int, max_pole: int, m: int) -> CellResult:
    N = hecke_input_precision(m, m * max_pole + 2)
    N = max(N, certificate_bound(2 * k, max_pole) + 1)
    basis = weak_basis(2 * k, max_pole, N)
    pairs = 0
    for f in basis:
        tf = hecke(f, m)
        for g in basis:
            if pairing_zero(tf, g) != pairing_zero(f, hecke(g, m)):
                return CellResult("hermitian", f"2k={2 * k} m={m}", False, "asymmetric pair")
            pairs += 1
    return CellResult("hermitian", f"2k={2 * k} m={m}", True, f"{pairs} pairs")


def _equivariance(k: int, max_pole: int, m: int) -> CellResult:
    N = hecke_input_precision(m, certificate_bound(2 * k, max_pole) + 2)
    factor = Fraction(m) ** (1 - 2 * k)
    for h in weak_cusp_basis(2 - 2 * k, max_pole, N):
        lhs = bol(hecke(h, m), k)
        rhs = hecke(bol(h, k), m).scale(factor)
        if not lhs.agrees(rhs):
            return CellResult("equivariance", f"2k={2 * k} m={m}", False, "mismatch")
    return CellResult("equivariance", f"2k={2 * k} m={m}", True, "")


def random_harmonic(k: int, rng: random.Random, support: int = 5) -> FormalHarmonicForm:
    def table():
        out = {}
        for n in range(-support, support + 1):
            if rng.random() < 0.5:
                out[n] = ScalarPi({rng.randint(-3, 3): Fraction(rng.randint(-9, 9), rng.randint(1, 9))})
        return out
    return FormalHarmonicForm(k, table(), table())


def flip_identities_hold(F: FormalHarmonicForm) -> bool:
    from math import factorial
    k = F.k
    fac = Fraction(factorial(2 * k - 2))
    up = four_pi_power(2 * k - 1) * (1 / fac)
    down = four_pi_power(1 - 2 * k) * fac
    G = flip(F)
    return (xi_op(G) == d_op(F).scale(up)
            and d_op(G) == xi_op(F).scale(down)
            and flip(G) == F)


def _flip(k: int, cases: int, seed: int) -> CellResult:
    rng = random.Random(seed * 1000 + k)
    for i in range(cases):
        if not flip_identities_hold(random_harmonic(k, rng)):
            return CellResult("flip", f"k={k}", False, f"case {i}")
    return CellResult("flip", f"k={k}", True, f"{cases} cases")


def _quotient_dim(k: int, max_pole: int | None) -> CellResult:
    P = smallest_stable_pole(k) if max_pole is None else max_pole
    expected = 2 * holomorphic_dimension(2 * k)
    model = build_quotient(k, P, quotient_precision(k, P, 1))
    ok = model.dimension == expected
    return CellResult("quotient-dim", f"2k={2 * k}", ok, f"P={P} dim={model.dimension}")


def _charpoly_square(k: int, max_pole: int | None, m: int) -> CellResult:
    P = smallest_stable_pole(k) if max_pole is None else max_pole
    model = build_quotient(k, P, quotient_precision(k, P, m))
    quotient = charpoly(hecke_on_quotient(model, m))
    hol = charpoly(holomorphic_hecke_matrix(2 * k, m))
    ok = quotient == poly_mul(hol, hol)
    return CellResult("charpoly-square", f"2k={2 * k} m={m}", ok, f"P={P}")


def _run_cell(args):
    name, params = args
    fn = {
        "theorem1": _theorem1, "hermitian": _hermitian, "equivariance": _equivariance,
        "flip": _flip, "quotient-dim": _quotient_dim, "charpoly-square": _charpoly_square,
    }[name]
    return fn(*params)


def suite_cells(suite: str, weights, max_pole: int | None, ms, cases: int = 250,
                seed: int = 0) -> list[tuple[str, tuple]]:
    ks = [w // 2 for w in weights]
    pole = 5 if max_pole is None else max_pole
    if suite == "theorem1":
        return [(suite, (k, pole)) for k in ks]
    if suite == "hermitian":
        return [(suite, (k, pole, m)) for k in ks for m in ms]
    if suite == "equivariance":
        return [(suite, (k, pole, m)) for k in ks for m in ms]
    if suite == "flip":
        return [(suite, (k, cases, seed)) for k in ks]
    if suite == "quotient-dim":
        return [(suite, (k, max_pole)) for k in ks]
    if suite == "charpoly-square":
        return [(suite, (k, max_pole, m)) for k in ks for m in ms]
    raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")


def worker_count() -> int:
    cap = os.environ.get("WEAKHECKE_THREADS")
    n = os.cpu_count() or 1
    if cap:
        n = min(n, max(1, int(cap)))
    return n


def run_suite(suite: str, weights=range(4, 27, 2), max_pole: int | None = None, ms=(2, 3),
              workers: int | None = None, **kwargs) -> list[CellResult]:
    cells = suite_cells(suite, list(weights), max_pole, list(ms), **kwargs)
    workers = worker_count() if workers is None else workers
    if workers <= 1 or len(cells) <= 1:
        return [_run_cell(c) for c in cells]
    with ProcessPoolExecutor(max_workers=min(workers, len(cells))) as pool:
        return list(pool.map(_run_cell, cells))
