"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage or validation
error, 3 I/O failure.
"""
from __future__ import annotations

import argparse
import io
import json
import math
import sys

import numpy as np

from . import closed_form as cf
from .closed_form import Couplings, Statistics, SuperCoeffs
from .errors import DegenerateState, ExcludedState, TwoAtomError
from .exclusion import exclusion_residual, solve_exclusion
from .gram import CMParams, RecoilModel, gram_pair
from .oracle import oracle_matrix_element, oracle_norms
from .sweep import ALIASES, NEAR_EXCLUSION_NF, FIGURES, figure_dataset, sweep_rates

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

CSV_HEADER = "a,rate_distinguishable,rate_boson,rate_fermion,nf_fermion,excluded_fermion"


class UsageError(Exception):
    pass


def _fmt(x):
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return "nan"
    return f"{float(x):.12g}"


def _parse_params(text):
    try:
        values = [complex(v.strip().replace(" ", "")) for v in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"--params: {exc}") from None
    if len(values) != 6:
        raise UsageError(f"--params expects 6 values c,d,e,f,g,h, got {len(values)}")
    values = [v.real if v.imag == 0 else v for v in values]
    return CMParams(*values)


def _config(args):
    params = _parse_params(args.params) if args.params else FIGURES["fig1"].params
    model = RecoilModel(args.rho)
    k = Couplings(args.da, args.db, args.d)
    return params, model, k


def _write(text, path):
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc


def curve_to_csv(curve):
    buf = io.StringIO()
    buf.write(CSV_HEADER + "\n")
    for i, a in enumerate(curve.grid):
        excluded = bool(curve.excluded_fermion[i])
        row = [
            _fmt(a),
            _fmt(curve.rate_distinguishable[i]),
            _fmt(curve.rate_boson[i]),
            "nan" if excluded else _fmt(curve.rate_fermion[i]),
            _fmt(curve.nf_fermion[i]),
            "1" if excluded else "0",
        ]
        buf.write(",".join(row) + "\n")
    return buf.getvalue()


def curve_to_json(curve):
    rows = []
    for i, a in enumerate(curve.grid):
        rows.append({
            "a": float(a),
            "rate_distinguishable": _num(curve.rate_distinguishable[i]),
            "rate_boson": _num(curve.rate_boson[i]),
            "rate_fermion": _num(curve.rate_fermion[i]),
            "nf_fermion": float(curve.nf_fermion[i]),
            "excluded_boson": bool(curve.excluded_boson[i]),
            "excluded_fermion": bool(curve.excluded_fermion[i]),
        })
    return json.dumps(rows, indent=1) + "\n"


def _num(x):
    return None if x is None or math.isnan(x) else float(x)


def _emit_curve(curve, args):
    text = curve_to_json(curve) if args.format == "json" else curve_to_csv(curve)
    _write(text, args.out)


def cmd_rates(args):
    params, model, k = _config(args)
    if args.a is None:
        raise UsageError("rates needs --a")
    if not 0.0 <= args.a <= 1.0:
        raise UsageError(f"--a must lie in [0, 1], got {args.a}")
    coeffs = SuperCoeffs.from_a(args.a)
    t = cf.rate_triplet(coeffs, params, model, k, NEAR_EXCLUSION_NF)
    record = {
        "a": coeffs.a.real,
        "b": coeffs.b.real,
        "rate_distinguishable": _num(t.rate_distinguishable),
        "rate_boson": _num(t.rate_boson),
        "rate_fermion": _num(t.rate_fermion),
        "nf_fermion": t.nf_fermion,
        "excluded": {"boson": t.excluded_boson, "fermion": t.excluded_fermion},
    }
    _write(json.dumps(record, indent=1) + "\n", args.out)
    return EXIT_OK


def cmd_sweep(args):
    params, model, k = _config(args)
    _emit_curve(sweep_rates(params, model, k, args.grid), args)
    return EXIT_OK


def cmd_figure(args):
    if args.figure not in ALIASES:
        raise UsageError(f"unknown figure id {args.figure!r}; choose from {', '.join(ALIASES)}")
    _emit_curve(figure_dataset(args.figure, args.grid), args)
    return EXIT_OK


def cmd_exclusion(args):
    params, _, _ = _config(args)
    sol = solve_exclusion(params)
    if sol is None:
        record = {"found": False}
    else:
        record = {
            "found": True,
            "a": sol.a.real,
            "b": sol.b.real,
            "residual": sol.residual,
            "nf_at_solution": sol.nf_at_solution,
        }
    _write(json.dumps(record, indent=1) + "\n", args.out)
    return EXIT_OK


QUANTITIES = ("N_D", "N_star", "M_D", "N_I_boson", "N_f_boson", "M_boson",
              "N_I_fermion", "N_f_fermion", "M_fermion")


def _rel(x, y):
    scale = max(abs(x), abs(y))
    return 0.0 if scale == 0 else abs(x - y) / scale


def _draw(rng, rho_range=(0.5, 1.0)):
    c, e, g = rng.uniform(-1.0, 1.0, 3)
    params = CMParams.from_real(c, e, g)
    coeffs = SuperCoeffs.from_a(rng.uniform(0.0, 1.0))
    model = RecoilModel(rng.uniform(*rho_range))
    return params, coeffs, model


def compare_once(params, coeffs, model, k):
    """Relative closed-form vs oracle deviation of every checked quantity."""
    g0, g1 = gram_pair(params, model)
    dev = {}
    n0, n1 = oracle_norms(coeffs, g0, g1, Statistics.DISTINGUISHABLE)
    dev["N_D"] = _rel(cf.n_d(coeffs, g0), n0 ** -0.5)
    dev["N_star"] = _rel(cf.n_star(coeffs, g0, g1), n1 ** -0.5)
    dev["M_D"] = _rel(
        cf.m_distinguishable(coeffs, g0, g1, k).value,
        oracle_matrix_element(coeffs, g0, g1, k, Statistics.DISTINGUISHABLE).value,
    )
    for stats in (Statistics.BOSON, Statistics.FERMION):
        n0, n1 = oracle_norms(coeffs, g0, g1, stats)
        dev[f"N_I_{stats.value}"] = _rel(cf.n_i(coeffs, g0, stats), n0 ** -0.5)
        dev[f"N_f_{stats.value}"] = _rel(cf.n_f(coeffs, g0, g1, stats), n1 ** -0.5)
        dev[f"M_{stats.value}"] = _rel(
            cf.m_identical(coeffs, g0, g1, k, stats).value,
            oracle_matrix_element(coeffs, g0, g1, k, stats).value,
        )
    return dev


def run_verification(trials, seed, k=Couplings(), nf_cutoff=NEAR_EXCLUSION_NF):
    """Seeded campaign; returns per-quantity maxima, the worst input, and redraw count."""
    rng = np.random.default_rng(seed)
    worst = dict.fromkeys(QUANTITIES, 0.0)
    worst_input = {}
    redraws = 0
    done = 0
    while done < trials:
        params, coeffs, model = _draw(rng)
        g0 = gram_pair(params, model)[0]
        if min(cf.ni_radicand(coeffs, g0, s) for s in (Statistics.BOSON, Statistics.FERMION)) < nf_cutoff:
            redraws += 1
            continue
        try:
            dev = compare_once(params, coeffs, model, k)
        except (ExcludedState, DegenerateState):
            redraws += 1
            continue
        done += 1
        for q, v in dev.items():
            if v > worst[q]:
                worst[q] = v
                worst_input[q] = (params, coeffs, model)
    return worst, worst_input, redraws


def cmd_verify(args):
    if args.trials < 1:
        raise UsageError(f"--trials must be >= 1, got {args.trials}")
    _, _, k = _config(args)
    worst, worst_input, redraws = run_verification(args.trials, args.seed, k)
    lines = [f"verify: trials={args.trials} seed={args.seed} tol={args.tol:g} redraws={redraws}"]
    failed = False
    for q in QUANTITIES:
        bad = worst[q] > args.tol
        failed |= bad
        lines.append(f"{q:12s} max_rel_dev={worst[q]:.3e} {'FAIL' if bad else 'ok'}")
        if bad:
            params, coeffs, model = worst_input[q]
            lines.append(
                f"  reproduce: --params {','.join(_fmt(v.real) for v in params.as_tuple())}"
                f" --a {_fmt(coeffs.a.real)} --rho {_fmt(model.rho)}"
            )
    _write("\n".join(lines) + "\n", args.out)
    return EXIT_VERIFY if failed else EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--params", help="c,d,e,f,g,h (default: Figure 1 configuration)")
    common.add_argument("--rho", type=float, default=0.9, help="recoil attenuation factor")
    common.add_argument("--da", type=float, default=0.9)
    common.add_argument("--db", type=float, default=1.1)
    common.add_argument("--d", type=float, default=1.0)
    common.add_argument("--out", default=None, help="output path (default stdout)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")

    parser = argparse.ArgumentParser(prog="twoatom", description="Two-atom absorption rates with recoil.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rates", parents=[common], help="rates at one superposition")
    p.add_argument("--a", type=float)
    p.set_defaults(func=cmd_rates)

    p = sub.add_parser("sweep", parents=[common], help="rates over a in [0, 1]")
    p.add_argument("--grid", type=int, default=1001)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("figure", parents=[common], help="dataset of a paper figure")
    p.add_argument("figure", help="fig1 | fig2l | fig2r")
    p.add_argument("--grid", type=int, default=1001)
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("exclusion", parents=[common], help="solve for the excluded superposition")
    p.set_defaults(func=cmd_exclusion)

    p = sub.add_parser("verify", parents=[common], help="closed form vs brute-force oracle")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "grid", 2) < 2:
        print("error: --grid must be >= 2", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, TwoAtomError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
