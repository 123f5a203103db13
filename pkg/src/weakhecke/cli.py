"""Command-line front end.

Exit status: 0 on success, 1 when a mathematical verdict is negative (a
form is not degenerate, a verification cell fails), 2 on usage or
precision errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import eigen, numeric, operators, pairing, spaces, verify
from .linalg import charpoly
from .qseries import (FourierSeries, PrecisionError, delta, eisenstein, format_rational,
                      j_invariant)


class UsageError(Exception):
    pass


class Verdict(Exception):
    """Carries output whose mathematical verdict is negative (exit status 1)."""

    def __init__(self, payload):
        super().__init__("negative verdict")
        self.payload = payload


def _read_form(path: str) -> FourierSeries:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return FourierSeries.from_json(text)
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"{path} is not a valid form file: {exc}") from None


def _builtin_or_file(spec: str, prec: int) -> FourierSeries:
    name = spec.lower()
    if name == "delta":
        return delta(prec)
    if name == "j":
        return j_invariant(prec)
    if name.startswith("e") and name[1:].isdigit():
        try:
            return eisenstein(int(name[1:]), prec)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    return _read_form(spec)


def _parse_weights(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        lo, _, hi = part.partition("-")
        if hi:
            out.extend(w for w in range(int(lo), int(hi) + 1) if w % 2 == 0)
        else:
            out.append(int(lo))
    return out


def _parse_ints(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x]


def _need_even_positive(weight: int) -> int:
    if weight % 2 or weight < 2:
        raise UsageError(f"--weight must be an even integer >= 2, got {weight}")
    return weight // 2


# -- subcommands ----------------------------------------------------------------

def cmd_basis(args):
    if args.weight % 2:
        raise UsageError("--weight must be even")
    if args.kind == "holomorphic":
        b = spaces.holomorphic_basis(args.weight, args.prec)
    elif args.kind == "cusp":
        b = spaces.weak_cusp_basis(args.weight, args.pole, args.prec)
    else:
        b = spaces.weak_basis(args.weight, args.pole, args.prec)
    return b.to_dict()


def cmd_hecke(args):
    f = _read_form(args.input)
    return operators.hecke(f, args.m, args.prec).to_dict()


def cmd_bol(args):
    f = _read_form(args.input)
    try:
        return operators.bol(f, args.k).to_dict()
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_pair(args):
    f, g = _read_form(args.f), _read_form(args.g)
    if args.bf:
        value = pairing.bf_pairing(f, g)
        return {"pairing": "bruinier-funke", "value": format_rational(value)}
    return {"pairing": "zero", "value": format_rational(pairing.pairing_zero(f, g))}


def cmd_degenerate(args):
    f = _read_form(args.input)
    report = pairing.is_degenerate(f, args.pole)
    if not report:
        raise Verdict(report.to_dict())
    return report.to_dict()


def _model(args, max_m: int):
    k = _need_even_positive(args.weight)
    prec = args.prec if args.prec is not None else eigen.quotient_precision(k, args.pole, max_m)
    return eigen.build_quotient(k, args.pole, prec)


def cmd_quotient(args):
    model = _model(args, max(args.m) if args.m else 1)
    out = {
        "weight": model.weight,
        "max_pole": model.max_pole,
        "precision": model.precision,
        "quotient_dim": model.dimension,
        "expected_dim": 2 * spaces.holomorphic_dimension(model.weight),
        "representative_pivots": [model.slice.pivots[i] for i in model.free],
        "hecke": {},
    }
    for m in args.m or []:
        a = eigen.hecke_on_quotient(model, m)
        out["hecke"][str(m)] = {
            "matrix": [[format_rational(x) for x in row] for row in a],
            "charpoly": [format_rational(c) for c in charpoly(a)],
        }
    return out


def cmd_eigen(args):
    model = _model(args, args.m)
    return eigen.eigenreport(model, args.m)


def cmd_verify(args):
    weights = _parse_weights(args.weights)
    ms = _parse_ints(args.ms)
    rows = verify.run_suite(args.suite, weights, args.pole, ms, workers=args.workers,
                            **({"cases": args.cases} if args.suite == "flip" else {}))
    payload = {"suite": args.suite, "cells": [r.to_dict() for r in rows],
               "passed": all(r.passed for r in rows)}
    if not payload["passed"]:
        raise Verdict(payload)
    return payload


def cmd_numeric(args):
    f = _builtin_or_file(args.f, args.prec)
    g = _builtin_or_file(args.g or args.f, args.prec)
    spec = numeric.QuadratureSpec(T=args.T)
    try:
        if args.hermitian:
            return numeric.check_hermitian_numeric(f, g, args.hermitian, spec).to_dict()
        return numeric.truncated_inner(f, g, spec=spec).to_dict()
    except (numeric.DivergentIntegralError, ValueError) as exc:
        if isinstance(exc, PrecisionError):
            raise
        raise UsageError(str(exc)) from None


# -- rendering --------------------------------------------------------------------

def _render_text(command: str, payload) -> str:
    if command == "verify":
        lines = [f"{c['suite']:<16} {c['cell']:<12} {'PASS' if c['passed'] else 'FAIL'}  {c['detail']}"
                 for c in payload["cells"]]
        lines.append("ALL PASS" if payload["passed"] else "FAILURES PRESENT")
        return "\n".join(lines) + "\n"
    if command == "eigen":
        lines = [f"weight {payload['weight']}, T_{payload['m']}, quotient dimension {payload['quotient_dim']}"]
        for c in payload["classes"]:
            label = c["eigenvalue"] if c["eigenvalue"] is not None else "factor " + " ".join(c["charpoly_factor"])
            lines.append(f"  {label}  multiplicity {c['multiplicity']}")
        return "\n".join(lines) + "\n"
    return json.dumps(payload, indent=2) + "\n"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="weakhecke",
                                description="Exact Hecke theory for weakly holomorphic modular forms.")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--out", help="write output here instead of stdout")
    p.add_argument("--auto-prec", action="store_true",
                   help="retry with the minimum precision reported by a failing step")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("basis", help="echelon basis of a pole-bounded slice")
    s.add_argument("--weight", type=int, required=True)
    s.add_argument("--pole", type=int, default=0)
    s.add_argument("--prec", type=int, required=True)
    s.add_argument("--kind", choices=("weak", "cusp", "holomorphic"), default="weak")
    s.set_defaults(func=cmd_basis)

    s = sub.add_parser("hecke", help="apply T_m to a form file")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--prec", type=int, help="output precision")
    s.set_defaults(func=cmd_hecke)

    s = sub.add_parser("bol", help="apply D^{2k-1} to a form of weight 2-2k")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--k", type=int)
    s.set_defaults(func=cmd_bol)

    s = sub.add_parser("pair", help="coefficient pairing of two form files")
    s.add_argument("--f", required=True)
    s.add_argument("--g", required=True)
    s.add_argument("--bf", action="store_true", help="Bruinier-Funke pairing against weight 2-2k")
    s.set_defaults(func=cmd_pair)

    s = sub.add_parser("degenerate", help="decide membership in D^{2k-1}(S^!_{2-2k})")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--pole", type=int)
    s.set_defaults(func=cmd_degenerate)

    for name, fn, helptext in (("quotient", cmd_quotient, "quotient model and Hecke matrices"),
                               ("eigen", cmd_eigen, "eigenclasses of T_m on the quotient")):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("--weight", type=int, required=True, help="the weight 2k")
        s.add_argument("--pole", type=int, default=3)
        s.add_argument("--prec", type=int)
        if name == "eigen":
            s.add_argument("--m", type=int, required=True)
        else:
            s.add_argument("--m", type=int, action="append")
        s.set_defaults(func=fn)

    s = sub.add_parser("verify", help="run a named verification suite")
    s.add_argument("suite", choices=verify.SUITES)
    s.add_argument("--weights", default="4-26")
    s.add_argument("--pole", type=int)
    s.add_argument("--m", dest="ms", default="2,3")
    s.add_argument("--cases", type=int, default=250)
    s.add_argument("--workers", type=int)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("numeric", help="truncated fundamental-domain inner product")
    s.add_argument("--f", required=True, help="form file or one of delta, j, E<w>")
    s.add_argument("--g", help="second form (default: same as --f)")
    s.add_argument("--T", type=float, default=3.0)
    s.add_argument("--prec", type=int, default=60)
    s.add_argument("--hermitian", type=int, metavar="M",
                   help="compare <f|T_M, g> with <f, g|T_M> instead")
    s.set_defaults(func=cmd_numeric)
    return p


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for _ in range(8):
        try:
            payload = args.func(args)
            status = 0
            break
        except Verdict as v:
            payload, status = v.payload, 1
            break
        except PrecisionError as exc:
            current = getattr(args, "prec", None)
            if args.auto_prec and current is not None and exc.required and exc.required > current:
                args.prec = exc.required
                continue
            msg = str(exc)
            if exc.required is not None:
                msg += f" (minimum precision: {exc.required})"
            print(f"weakhecke: precision error: {msg}", file=sys.stderr)
            return 2
        except (UsageError, ValueError) as exc:
            print(f"weakhecke: error: {exc}", file=sys.stderr)
            return 2
    else:
        print("weakhecke: precision error: automatic escalation did not converge", file=sys.stderr)
        return 2
    _emit(args, _render_text(args.command, payload) if args.format == "text"
          else json.dumps(payload, indent=2) + "\n")
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
