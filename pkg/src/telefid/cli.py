"""Command-line front-end.

Subcommands: analyze, construct, verify, sweep, oracle.  Exit codes:
0 ok/optimal, 1 not optimal, 2 parse error, 3 invalid state,
4 out-of-range parameter, 5 mismatched property value.  All numbers are
printed with 12 significant digits; sweep output is RFC-4180 CSV.
"""

import argparse
import csv
import json
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import optimal as opt
from .canonical import canonicalize, form_to_dict
from .errors import (
    MismatchedProperty,
    NonHermitian,
    NotPositive,
    OutOfRange,
    StateFormatError,
    TraceNotOne,
    TelefidError,
)
from .metrics import assess
from .optimal import check_fidelity_concurrence_saturation, check_optimal
from .properties import property_report
from .sim import fidelity_stats, fidelity_stats_mc, protocol_state
from .states import read_state_file, state_to_json, validate, write_state_file

EXIT_OK = 0
EXIT_NOT_OPTIMAL = 1
EXIT_PARSE = 2
EXIT_INVALID_STATE = 3
EXIT_RANGE = 4
EXIT_MISMATCH = 5

_KIND_BY_LETTER = {
    "L": opt.LINEAR_ENTROPY,
    "B": opt.CHSH_B,
    "C": opt.CONCURRENCE,
}


def _fmt(x):
    return f"{x:.12g}"


def _round12(obj):
    """Round all floats to 12 significant digits for JSON output."""
    if isinstance(obj, float):
        return float(f"{obj:.12g}")
    if isinstance(obj, dict):
        return {k: _round12(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round12(v) for v in obj]
    return obj


def _err(message):
    print(f"error: {message}", file=sys.stderr)


def _load_valid_state(path):
    try:
        raw = read_state_file(path)
    except (OSError, StateFormatError) as exc:
        _err(str(exc))
        return None, EXIT_PARSE
    try:
        rho = validate(raw)
    except (NonHermitian, TraceNotOne, NotPositive, StateFormatError) as exc:
        _err(f"invalid state: {exc}")
        return None, EXIT_INVALID_STATE
    return rho, EXIT_OK


def _analysis_report(rho):
    form = canonicalize(rho)
    met = assess(rho)
    props = property_report(rho)
    if props.concurrence > 0.0:
        sat = check_fidelity_concurrence_saturation(rho)
        saturation = {
            "lambda_min": sat.lambda_min,
            "eigvec_max_entangled": sat.eigvec_max_entangled,
            "saturates": sat.saturates,
        }
    else:
        saturation = None
    neg_bound = (2.0 + props.negativity) / 3.0
    conc_bound = (2.0 + props.concurrence) / 3.0
    return {
        "schema_version": 1,
        "input": state_to_json(rho),
        "canonical": form_to_dict(form),
        "metrics": {
            "max_fidelity": met.f_max,
            "fidelity_deviation": met.delta,
            "det_class": met.det_class,
            "useful": met.useful,
            "universal": met.universal,
        },
        "properties": {
            "linear_entropy": props.linear_entropy,
            "chsh_m": props.chsh_m,
            "chsh_b": props.chsh_b,
            "concurrence": props.concurrence,
            "negativity": props.negativity,
        },
        "saturation": saturation,
        "bounds": {
            "max_fidelity": met.f_max,
            "negativity_bound": neg_bound,
            "concurrence_bound": conc_bound,
            "f_within_negativity_bound": bool(met.f_max <= neg_bound + 1e-9),
            "negativity_within_concurrence_bound": bool(neg_bound <= conc_bound + 1e-9),
        },
    }


def _print_text_report(rep):
    can = rep["canonical"]
    met = rep["metrics"]
    props = rep["properties"]
    print("canonical form")
    print(f"  t_abs      : {' '.join(_fmt(x) for x in can['t_abs'])}")
    print(f"  lambda     : {' '.join(str(x) for x in can['lambda'])}")
    print(f"  det class  : {can['det_class']}   degenerate: {can['degenerate']}")
    print(f"  r          : {' '.join(_fmt(x) for x in can['r'])}")
    print(f"  s          : {' '.join(_fmt(x) for x in can['s'])}")
    print("teleportation metrics")
    print(f"  max fidelity       : {_fmt(met['max_fidelity'])}")
    print(f"  fidelity deviation : {_fmt(met['fidelity_deviation'])}")
    print(f"  useful: {met['useful']}   universal: {met['universal']}")
    print("state properties")
    for key in ("linear_entropy", "chsh_m", "chsh_b", "concurrence", "negativity"):
        print(f"  {key:<15}: {_fmt(props[key])}")
    if rep["saturation"] is not None:
        sat = rep["saturation"]
        print("concurrence-bound saturation")
        print(f"  lambda_min : {_fmt(sat['lambda_min'])}")
        print(f"  saturates  : {sat['saturates']}")
    b = rep["bounds"]
    print("fidelity bounds")
    print(
        f"  F = {_fmt(b['max_fidelity'])} <= (2+N)/3 = {_fmt(b['negativity_bound'])}"
        f" <= (2+C)/3 = {_fmt(b['concurrence_bound'])}"
    )


def cmd_analyze(args):
    rho, code = _load_valid_state(args.state_file)
    if rho is None:
        return code
    rep = _analysis_report(rho)
    if args.json:
        print(json.dumps(_round12(rep), indent=2))
    else:
        _print_text_report(rep)
    return EXIT_OK


def _parse_vector(text):
    parts = text.split(",")
    if len(parts) != 3:
        raise ValueError("expected three comma-separated components")
    return np.array([float(p) for p in parts])


def cmd_construct(args):
    kind = _KIND_BY_LETTER[args.kind]
    r_vec = None
    if args.r is not None:
        if args.kind != "C":
            _err("--r is only meaningful for --kind C (the family has s = -r)")
            return EXIT_PARSE
        try:
            r_vec = _parse_vector(args.r)
        except ValueError as exc:
            _err(str(exc))
            return EXIT_PARSE
    try:
        if kind == opt.LINEAR_ENTROPY:
            spec, rho = opt.optimal_for_linear_entropy(args.value)
        elif kind == opt.CHSH_B:
            spec, rho = opt.optimal_for_chsh(args.value)
        else:
            spec, rho = opt.optimal_for_concurrence(args.value, r=r_vec)
    except OutOfRange as exc:
        _err(str(exc))
        return EXIT_RANGE
    except NotPositive as exc:
        _err(f"requested local vector gives no state: {exc}")
        return EXIT_RANGE
    write_state_file(args.out, rho)
    print(
        f"wrote {args.out}: kind={args.kind} value={_fmt(spec.value)} "
        f"t_abs={_fmt(spec.t_abs_target[0])} F_largest={_fmt(spec.f_largest)}"
    )
    return EXIT_OK


def cmd_verify(args):
    rho, code = _load_valid_state(args.state_file)
    if rho is None:
        return code
    kind = _KIND_BY_LETTER[args.kind]
    try:
        verdict = check_optimal(rho, kind, args.value)
    except OutOfRange as exc:
        _err(str(exc))
        return EXIT_RANGE
    except MismatchedProperty as exc:
        _err(str(exc))
        return EXIT_MISMATCH
    print(json.dumps(_round12(verdict.witness), indent=2))
    return EXIT_OK if verdict.is_optimal else EXIT_NOT_OPTIMAL


def _sweep_row(kind, value):
    if kind == opt.LINEAR_ENTROPY:
        spec, rho = opt.optimal_for_linear_entropy(value)
    elif kind == opt.CHSH_B:
        spec, rho = opt.optimal_for_chsh(value)
    else:
        spec, rho = opt.optimal_for_concurrence(value)
    stats = fidelity_stats(protocol_state(canonicalize(rho)))
    return (
        _fmt(value),
        _fmt(spec.f_largest),
        _fmt(spec.t_abs_target[0]),
        _fmt(stats.mean),
        _fmt(stats.deviation),
    )


def cmd_sweep(args):
    kind = _KIND_BY_LETTER[args.kind]
    values = np.linspace(args.start, args.stop, args.steps)
    try:
        for endpoint in (args.start, args.stop):
            opt.largest_max_fidelity(kind, endpoint)
    except OutOfRange as exc:
        _err(str(exc))
        return EXIT_RANGE
    with ThreadPoolExecutor() as pool:
        rows = list(pool.map(lambda v: _sweep_row(kind, v), values))
    with open(args.out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["value", "f_closed_form", "t_abs", "f_oracle", "delta_oracle"])
        writer.writerows(rows)
    print(f"wrote {args.out}: {len(rows)} rows")
    return EXIT_OK


def cmd_oracle(args):
    rho, code = _load_valid_state(args.state_file)
    if rho is None:
        return code
    form = canonicalize(rho)
    met = assess(rho)
    adapted = protocol_state(form)
    exact = fidelity_stats(adapted)
    raw = fidelity_stats(rho)
    print(f"closed form        : F = {_fmt(met.f_max)}  delta = {_fmt(met.delta)}")
    print(
        f"design-exact       : mean = {_fmt(exact.mean)}  deviation = {_fmt(exact.deviation)}"
        f"  |dF| = {_fmt(abs(exact.mean - met.f_max))}"
        f"  |ddelta| = {_fmt(abs(exact.deviation - met.delta))}"
    )
    print(f"protocol on input  : mean = {_fmt(raw.mean)} (no optimizing rotation)")
    if args.mc is not None:
        mc = fidelity_stats_mc(adapted, args.mc, args.seed)
        sigmas = (
            abs(mc.mean - exact.mean) / mc.std_error if mc.std_error > 0 else 0.0
        )
        print(
            f"monte-carlo        : mean = {_fmt(mc.mean)} +- {_fmt(mc.std_error)}"
            f"  deviation = {_fmt(mc.deviation)}  ({_fmt(sigmas)} sigma from exact)"
        )
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="telefid",
        description="Analyze two-qubit states as quantum-teleportation resources.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full report for a state file")
    p.add_argument("state_file")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--json", action="store_true")
    group.add_argument("--text", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("construct", help="build an optimal-family state")
    p.add_argument("--kind", choices=("L", "B", "C"), required=True)
    p.add_argument("--value", type=float, required=True)
    p.add_argument("--r", help="local vector x,y,z (kind C only; s = -r)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="certify optimality of a state")
    p.add_argument("state_file")
    p.add_argument("--kind", choices=("L", "B", "C"), required=True)
    p.add_argument("--value", type=float, required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="CSV sweep of a family curve")
    p.add_argument("--kind", choices=("L", "B", "C"), required=True)
    p.add_argument("--from", dest="start", type=float, required=True)
    p.add_argument("--to", dest="stop", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("oracle", help="simulation oracle vs closed forms")
    p.add_argument("state_file")
    p.add_argument("--mc", type=int, default=None, help="Monte-Carlo sample count")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_oracle)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except TelefidError as exc:
        _err(str(exc))
        return EXIT_PARSE


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
