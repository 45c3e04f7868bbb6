"""Command-line front end.

Exit codes: 0 on success, 1 on domain errors, 2 on usage errors.  Errors are
written to stderr as a single JSON object.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from typing import List, Optional

from ._exact import to_fraction
from .algebra import AlgebraParams
from .cyclic import CyclicSpectrumSpec, extract_omegas, match_omegas
from .errors import ClambdaError
from .fock import build, verify_relations
from .pssqm import PssqmConfig, build_charge, spectrum_figure2, verify_pssqm
from .report import (
    FIGURE1,
    FORMATS,
    classification_report,
    emit_report,
    figure1_report,
    figure2_report,
    match_report,
    omegas_report,
    pssqm_report,
    relation_report,
    spectrum_report,
)
from .spectrum import DEFAULT_MAX_N, classify_subclass, compute_spectrum

ENV_FORMAT = "CLAMBDA_OUTPUT"
DEFAULT_DIM = 32
DEFAULT_LEVELS = 24
DEFAULT_TOL = 1e-10
FIGURE2_ALPHA = (0, 1)
PSSQM_CHECKS = ("rs", "bd", "general")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let "--alpha -3/2" through as a value
        self._negative_number_matcher = re.compile(r"^-\d+(/\d+)?$|^-\d*\.\d+$")

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _rational(text: str):
    try:
        return to_fraction(text)
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _build_parser() -> _Parser:
    fmt = _Parser(add_help=False)
    fmt.add_argument("--format", choices=FORMATS, default=None,
                     help=f"output format (default: ${ENV_FORMAT} or json)")

    params = _Parser(add_help=False)
    params.add_argument("--lambda", dest="lam", type=int, default=None)
    params.add_argument("--alpha", action="append", type=_rational, default=None,
                        help="independent alpha_0 .. alpha_{lambda-2}; repeat per value")
    params.add_argument("--params", dest="params_file", default=None,
                        help='JSON file {"lambda": int, "alpha": ["p/q", ...]}')

    parser = _Parser(prog="clambda", description="C_lambda-extended oscillator toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", parents=[params, fmt], help="exact H0 spectrum")
    sp.add_argument("--levels", type=int, default=DEFAULT_LEVELS)
    sp.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)

    sp = sub.add_parser("classify", parents=[params, fmt], help="lambda=3 spectrum type")
    sp.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)

    sp = sub.add_parser("verify-algebra", parents=[params, fmt],
                        help="check defining relations on Fock matrices")
    sp.add_argument("--dim", type=int, default=DEFAULT_DIM)
    sp.add_argument("--tol", type=float, default=DEFAULT_TOL)

    sp = sub.add_parser("cyclic", parents=[params, fmt], help="period-three level spacings")
    sp.add_argument("action", choices=("extract", "match"))
    sp.add_argument("--omega", action="append", type=_rational, default=None)
    sp.add_argument("--omega-file", default=None, help='JSON file {"omega": ["p/q", ...]}')
    sp.add_argument("--levels", type=int, default=12)

    sp = sub.add_parser("pssqm", parents=[params, fmt], help="order-two PSSQM verification")
    sp.add_argument("--mu", type=int, default=0, choices=(0, 1, 2))
    sp.add_argument("--eta", default="sqrt2", help="sqrt2 or a rational in (0, 2)")
    sp.add_argument("--phi", type=float, default=0.0)
    sp.add_argument("--check", default="rs,bd")
    sp.add_argument("--dim", type=int, default=DEFAULT_DIM)
    sp.add_argument("--tol", type=float, default=DEFAULT_TOL)

    sp = sub.add_parser("figure", parents=[params, fmt], help="data behind the figures")
    sp.add_argument("--which", required=True, choices=sorted(FIGURE1) + ["2"])
    sp.add_argument("--mu", type=int, default=None, choices=(0, 1, 2))
    sp.add_argument("--levels", type=int, default=None)
    return parser


def _params(args, required=True) -> Optional[AlgebraParams]:
    if args.params_file:
        if args.lam is not None or args.alpha:
            raise UsageError("use either --params or --lambda/--alpha, not both")
        try:
            with open(args.params_file) as fh:
                return AlgebraParams.from_json(json.load(fh))
        except (OSError, KeyError, ValueError, TypeError) as exc:
            raise UsageError(f"cannot read parameters from {args.params_file}: {exc}") from None
    if args.lam is None:
        if args.alpha or required:
            raise UsageError("--lambda is required")
        return None
    try:
        return AlgebraParams(args.lam, tuple(args.alpha or ()))
    except (ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from None


def _omega_spec(args) -> CyclicSpectrumSpec:
    values = args.omega
    if args.omega_file:
        if values:
            raise UsageError("use either --omega or --omega-file, not both")
        try:
            with open(args.omega_file) as fh:
                values = [to_fraction(x) for x in json.load(fh)["omega"]]
        except (OSError, KeyError, ValueError, TypeError) as exc:
            raise UsageError(f"cannot read omega from {args.omega_file}: {exc}") from None
    if not values:
        raise UsageError("cyclic match needs --omega (three times) or --omega-file")
    return CyclicSpectrumSpec(len(values), tuple(values))


def _run(args) -> dict:
    cmd = args.command
    if cmd == "spectrum":
        p = _params(args)
        s = compute_spectrum(p, args.levels)
        cls = classify_subclass(p, args.max_n) if p.lam == 3 else None
        return spectrum_report(s, cls)
    if cmd == "classify":
        p = _params(args)
        return classification_report(p, classify_subclass(p, args.max_n))
    if cmd == "verify-algebra":
        p = _params(args)
        rep = build(p, args.dim)
        return relation_report(rep, verify_relations(rep, args.tol))
    if cmd == "cyclic":
        if args.action == "extract":
            p = _params(args)
            return omegas_report(p, extract_omegas(p))
        spec = _omega_spec(args)
        return match_report(spec, match_omegas(spec), args.levels)
    if cmd == "pssqm":
        p = _params(args)
        checks = tuple(c.strip() for c in args.check.split(",") if c.strip())
        bad = [c for c in checks if c not in PSSQM_CHECKS]
        if bad:
            raise UsageError(f"unknown checks {bad}; choose from {list(PSSQM_CHECKS)}")
        c = PssqmConfig.from_eta(p, args.mu, args.eta, args.phi, args.dim)
        s = build_charge(c)
        return pssqm_report(c, s, verify_pssqm(s, args.tol), checks)
    if cmd == "figure":
        if args.which in FIGURE1:
            return figure1_report(args.which, args.levels or 10)
        p = _params(args, required=False) or AlgebraParams(3, FIGURE2_ALPHA)
        mus = [args.mu] if args.mu is not None else [0, 1, 2]
        # the drawn panels reach three periods above their ground states
        panels = [spectrum_figure2(p, mu, args.levels or 10 + mu) for mu in mus]
        return figure2_report(p, panels)
    raise UsageError(f"unknown command {cmd}")


def _fail(kind: str, message: str, code: int) -> int:
    sys.stderr.write(json.dumps({"error": kind, "message": message}, sort_keys=True) + "\n")
    return code


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        fmt = args.format or os.environ.get(ENV_FORMAT) or "json"
        if fmt not in FORMATS:
            raise UsageError(f"{ENV_FORMAT}={fmt!r} is not one of {list(FORMATS)}")
        report = _run(args)
    except UsageError as exc:
        return _fail("UsageError", str(exc), 2)
    except ClambdaError as exc:
        return _fail(type(exc).__name__, str(exc), 1)
    except (ValueError, TypeError) as exc:
        return _fail("UsageError", str(exc), 2)
    sys.stdout.write(emit_report(report, fmt))
    return 0


if __name__ == "__main__":
    sys.exit(main())
