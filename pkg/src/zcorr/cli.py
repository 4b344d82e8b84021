"""Command-line interface.

Exit codes: 0 verified, 1 verification failure, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

from .classical import JointDist2x2, analyze, marginals
from .campaign import MODES, run_classical, run_quantum
from .construction import ConstructionOptions, classification, construct, verify
from .errors import ZCorrError
from .observables import ObservableParams, assemble, covariance
from .quantum_state import Amplitudes, StateParams, from_amplitudes, separability, to_amplitudes, validate

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
DEFAULT_TOL = 1e-10

_R = 1.0 / math.sqrt(2.0)
# signed-amplitude forms of the Bell states
BELL_STATES = {
    "phi+": StateParams(_R, 0.0, 0.0, _R),
    "phi-": StateParams(_R, 0.0, 0.0, -_R),
    "psi+": StateParams(0.0, _R, _R, 0.0),
    "psi-": StateParams(0.0, _R, -_R, 0.0),
}
# (eps sign, offdiag sign) of the zero-correlation pairs: sigma_x -/+ sigma_z
_BELL_PAIRS = {
    "phi+": ((-1.0, 1.0), (1.0, 1.0)),
    "psi-": ((-1.0, 1.0), (1.0, 1.0)),
    "phi-": ((1.0, 1.0), (1.0, 1.0)),
    "psi+": ((1.0, 1.0), (1.0, 1.0)),
}
# named single-qubit observables as (eps, offdiag) in units of --scale
OBSERVABLE_PRESETS = {
    "sz": (1.0, 0.0),
    "sx": (0.0, 1.0),
    "sx+sz": (1.0, 1.0),
    "sx-sz": (-1.0, 1.0),
}


class UsageError(Exception):
    pass


def bell_pair(which: str, scale: float = 1.0, q0: float = 0.0, r0: float = 0.0):
    """Q0 1 + m(sigma_x -/+ sigma_z) and R0 1 + m(sigma_x + sigma_z) for a Bell state."""
    (qe, qo), (re_, ro) = _BELL_PAIRS[which]
    qa = ObservableParams.signed(q0, qe * scale, qo * scale, 0.0)
    rb = ObservableParams.signed(r0, re_ * scale, ro * scale, 0.0)
    return qa, rb


def default_tol() -> float:
    raw = os.environ.get("ZCORR_TOL")
    if raw is None:
        return DEFAULT_TOL
    try:
        return float(raw)
    except ValueError:
        raise UsageError(f"ZCORR_TOL={raw!r} is not a number") from None


def _load_json_arg(text: str):
    if text.startswith("@"):
        text = Path(text[1:]).read_text()
    return json.loads(text)


def parse_state(text: str) -> StateParams:
    """Bell preset name, inline JSON, or @file holding StateParams or Amplitudes JSON."""
    if text in BELL_STATES:
        return BELL_STATES[text]
    obj = _load_json_arg(text)
    if not isinstance(obj, dict):
        raise UsageError("state JSON must be an object")
    if "amplitudes" in obj:
        amps = Amplitudes.from_json(obj)
        if abs(amps.norm_sq - 1.0) > 1e-9:
            raise UsageError(f"amplitudes are not normalized (norm^2 = {amps.norm_sq!r})")
        return from_amplitudes(amps)
    return validate(StateParams.from_json(obj))


def parse_observable(text: str, scale: float, center: float) -> ObservableParams:
    if text in OBSERVABLE_PRESETS:
        e, o = OBSERVABLE_PRESETS[text]
        return ObservableParams.signed(center, e * scale, o * scale, 0.0)
    obj = _load_json_arg(text)
    if not isinstance(obj, dict):
        raise UsageError("observable JSON must be an object")
    return ObservableParams.from_json(obj)


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _flatten(v, f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(obj, list) and all(isinstance(x, (int, float)) for x in obj):
        yield prefix, ", ".join(_fmt(x) for x in obj)
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}.{i}")
    else:
        yield prefix, _fmt(obj)


def _fmt(x) -> str:
    if isinstance(x, bool) or x is None:
        return json.dumps(x)
    if isinstance(x, float):
        return repr(x)
    return str(x)


def emit(obj: dict, fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        out.write(json.dumps(obj, indent=2) + "\n")
        return
    rows = list(_flatten(obj))
    width = max(len(k) for k, _ in rows)
    for k, v in rows:
        out.write(f"{k.ljust(width)}  {v}\n")


def _options(args) -> ConstructionOptions:
    return ConstructionOptions(
        scale=args.scale, q0=args.q0, r0=args.r0, tol=args.classify_tol, prefer_option=args.prefer_option
    )


def cmd_construct(args) -> int:
    params = parse_state(args.state)
    result = construct(params, _options(args))
    report = verify(params, result)
    out = {"state": params.to_json()}
    out.update(result.to_json(covariance_check=report.covariance))
    out["correlation"] = report.to_json()
    emit(out, args.format)
    return EXIT_OK if abs(report.covariance) <= args.tol else EXIT_FAIL


def cmd_verify(args) -> int:
    params = parse_state(args.state)
    qa = parse_observable(args.qa, args.scale, args.q0)
    rb = parse_observable(args.rb, args.scale, args.r0)
    report = covariance(to_amplitudes(params), assemble(qa), assemble(rb))
    ok = abs(report.covariance) <= args.tol
    emit(
        {
            "state": params.to_json(),
            "qa": qa.to_json(),
            "rb": rb.to_json(),
            "correlation": report.to_json(),
            "zero_correlation": ok,
        },
        args.format,
    )
    return EXIT_OK if ok else EXIT_FAIL


def cmd_classify(args) -> int:
    params = parse_state(args.state)
    cl = classification(params, args.classify_tol, args.prefer_option)
    emit(
        {
            "state": params.to_json(),
            "case": cl.case.value,
            "xi": cl.xi,
            "canonicalized": cl.canonicalized,
            "sensitive": cl.sensitive,
            "separability": separability(params).to_json(),
        },
        args.format,
    )
    return EXIT_OK


def cmd_bell(args) -> int:
    params = BELL_STATES[args.which]
    qa, rb = bell_pair(args.which, args.scale, args.q0, args.r0)
    qa_m, rb_m = assemble(qa), assemble(rb)
    report = covariance(to_amplitudes(params), qa_m, rb_m)
    emit(
        {
            "state": args.which,
            "params": params.to_json(),
            "case": classification(params, args.classify_tol).case.value,
            "qa": qa.to_json(),
            "rb": rb.to_json(),
            "qa_matrix": qa_m.to_json(),
            "rb_matrix": rb_m.to_json(),
            "correlation": report.to_json(),
        },
        args.format,
    )
    return EXIT_OK if abs(report.covariance) <= args.tol else EXIT_FAIL


def cmd_random_test(args) -> int:
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    if args.mode == "classical":
        summary = run_classical(args.n, args.seed, args.tol)
    else:
        summary = run_quantum(args.n, args.seed, args.tol, args.mode, _options(args))
    emit(summary.to_json(timing=args.timing), args.format)
    return EXIT_OK if summary.failures == 0 else EXIT_FAIL


def cmd_classical(args) -> int:
    d = JointDist2x2.from_json(_load_json_arg(args.dist))
    rep = analyze(d)
    emit(
        {
            "distribution": d.to_json(),
            "marginals": list(marginals(d)),
            "report": rep.to_json(),
            "dependence_gap": abs(rep.covariance),
        },
        args.format,
    )
    return EXIT_OK


def build_parser(tol: float) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=tol, help="verification tolerance on |covariance|")
    common.add_argument("--classify-tol", type=float, default=1e-9, help="zero threshold for case guards")
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--scale", type=float, default=1.0)
    common.add_argument("--q0", type=float, default=0.0)
    common.add_argument("--r0", type=float, default=0.0)
    common.add_argument("--prefer-option", choices=("auto", "A", "B"), default="auto")

    parser = argparse.ArgumentParser(
        prog="zcorr", description="Zero-correlation local observables for two-qubit pure states."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common], help="construct and verify a zero-correlation pair")
    p.add_argument("--state", required=True, help="JSON, @file, or phi+/phi-/psi+/psi-")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", parents=[common], help="covariance of a given observable pair")
    p.add_argument("--state", required=True)
    p.add_argument("--qa", required=True, help="ObservableParams JSON or sz/sx/sx+sz/sx-sz")
    p.add_argument("--rb", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classify", parents=[common], help="case of the construction tree")
    p.add_argument("--state", required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("bell", parents=[common], help="explicit operator pairs for Bell states")
    p.add_argument("which", choices=sorted(BELL_STATES))
    p.set_defaults(func=cmd_bell)

    p = sub.add_parser("random-test", parents=[common], help="seeded randomized campaign")
    p.add_argument("--n", type=int, default=10000)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--mode", choices=MODES, default="mixed")
    p.add_argument("--timing", action="store_true", help="include elapsed_ms (breaks byte-identical output)")
    p.set_defaults(func=cmd_random_test)

    p = sub.add_parser("classical", parents=[common], help="analyze a 2x2 joint distribution")
    p.add_argument("--dist", required=True, help='JSON {"p": [..4], "x": [..2], "y": [..2]} or @file')
    p.set_defaults(func=cmd_classical)
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        tol = default_tol()
    except UsageError as exc:
        print(f"zcorr: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    parser = build_parser(tol)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if not args.tol > 0:
        print("zcorr: error: --tol must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, ZCorrError, ValueError, KeyError, TypeError, OSError) as exc:
        # json.JSONDecodeError is a ValueError
        print(f"zcorr: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run() -> None:
    sys.exit(main())
