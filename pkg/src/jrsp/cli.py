"""Command-line front end.

Subcommands:
  sweep     fidelity vs decoherence rate, CSV/JSON (optionally a figure)
  outcomes  the 16-branch noiseless outcome table
  verify    analytic-vs-simulation verification report
  bases     dump both measurement basis matrices

Exit codes: 0 success, 1 usage error, 2 verification failure on an
unambiguous closed form.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from .analytic import closed_form_fidelity, compare_with_simulation
from .channels import NoiseKind, completeness_defect, kraus_set
from .protocol import (
    AssistMode,
    PhaseSpec,
    alice_basis,
    bob_basis,
    jrsp_fidelity,
    run_jrsp,
    success_probability,
)

CSV_HEADER = "lambda,channel,fidelity_sim,fidelity_closed,abs_diff"
VERIFY_TOL = 1e-9
# Channels whose printed closed form involves no ambiguous bracket notation.
UNAMBIGUOUS = (NoiseKind.PHASE_FLIP, NoiseKind.PHASE_DAMPING)

PRESETS = {
    "fig1a": dict(angle=30.0, channels=("bit_flip", "phase_flip", "bit_phase_flip")),
    "fig1b": dict(angle=180.0, channels=("bit_flip", "phase_flip", "bit_phase_flip")),
    "fig1c": dict(angle=300.0, channels=("bit_flip", "phase_flip", "bit_phase_flip")),
    "fig3a": dict(angle=30.0, channels="all"),
    "fig3b": dict(angle=300.0, channels="all"),
}


def _fmt(x: float) -> str:
    return format(float(x), ".12g")


class _Parser(argparse.ArgumentParser):
    """argparse with exit code 1 on usage errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def _add_phase_args(parser):
    parser.add_argument("--alpha", default="0,0,0", metavar="a1,a2,a3",
                        help="Alice's three free phase angles")
    parser.add_argument("--beta", default="0,0,0", metavar="b1,b2,b3",
                        help="Bob's three free phase angles")
    unit = parser.add_mutually_exclusive_group()
    unit.add_argument("--degrees", action="store_true",
                      help="interpret angles as degrees")
    unit.add_argument("--radians", action="store_true",
                      help="interpret angles as radians (default)")


def _parse_phases(args, parser) -> PhaseSpec:
    try:
        alpha = [float(x) for x in args.alpha.split(",")]
        beta = [float(x) for x in args.beta.split(",")]
        return PhaseSpec.from_free_angles(alpha, beta, degrees=args.degrees)
    except ValueError as exc:
        parser.error(f"invalid phases: {exc}")


def _channel_list(name: str) -> list[NoiseKind]:
    if name == "all":
        return list(NoiseKind)
    return [NoiseKind(name)]


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _sweep_rows(channels, lambdas, phases, renormalized):
    rows = []
    for lam in lambdas:
        for kind in channels:
            records = run_jrsp(phases, noise=(kind, lam))
            f_sim = jrsp_fidelity(records, phases, renormalized=renormalized)
            f_closed = closed_form_fidelity(kind, lam, phases)
            rows.append({
                "lambda": float(lam),
                "channel": kind.value,
                "fidelity_sim": f_sim,
                "fidelity_closed": f_closed,
                "abs_diff": abs(f_sim - f_closed),
            })
    return rows


def _rows_to_csv(rows) -> str:
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(",".join([
            _fmt(r["lambda"]), r["channel"], _fmt(r["fidelity_sim"]),
            _fmt(r["fidelity_closed"]), _fmt(r["abs_diff"]),
        ]))
    return "\n".join(lines) + "\n"


def _rows_to_json(rows) -> str:
    out = [
        {
            "lambda": float(_fmt(r["lambda"])),
            "channel": r["channel"],
            "fidelity_sim": float(_fmt(r["fidelity_sim"])),
            "fidelity_closed": float(_fmt(r["fidelity_closed"])),
            "abs_diff": float(_fmt(r["abs_diff"])),
        }
        for r in rows
    ]
    return json.dumps(out, indent=2) + "\n"


def cmd_sweep(args, parser) -> int:
    if args.preset:
        preset = PRESETS[args.preset]
        angle = preset["angle"]
        args.alpha = args.beta = f"{angle},{angle},{angle}"
        args.degrees = True
        if preset["channels"] != "all":
            chans = [NoiseKind(c) for c in preset["channels"]]
        else:
            chans = list(NoiseKind)
    else:
        chans = _channel_list(args.channel)
    phases = _parse_phases(args, parser)
    if not 0.0 <= args.lambda_start <= args.lambda_end <= 1.0:
        parser.error("need 0 <= lambda-start <= lambda-end <= 1")
    if args.steps < 2:
        parser.error("steps must be >= 2")
    lambdas = np.linspace(args.lambda_start, args.lambda_end, args.steps)
    rows = _sweep_rows(chans, lambdas, phases, args.renormalized)
    text = _rows_to_json(rows) if args.format == "json" else _rows_to_csv(rows)
    try:
        _emit(text, args.output)
    except OSError as exc:
        sys.stderr.write(f"cannot write output: {exc}\n")
        return 1
    if args.figure:
        from .plotting import render_sweep_figure
        render_sweep_figure(rows, args.figure)
    return 0


def cmd_outcomes(args, parser) -> int:
    phases = _parse_phases(args, parser)
    mode = AssistMode(args.mode)
    records = run_jrsp(phases, mode=mode)
    lines = ["alice_index,bob_index,weight,success,fidelity_normalized"]
    for r in records:
        norm_f = r.branch_fidelity / r.weight
        lines.append(",".join([
            str(r.alice_index), str(r.bob_index), _fmt(r.weight),
            "true" if r.success else "false", _fmt(norm_f),
        ]))
    lines.append(f"# success_probability = {_fmt(success_probability(records))}")
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def cmd_bases(args, parser) -> int:
    phases = _parse_phases(args, parser)
    out = []
    for basis in (alice_basis(phases), bob_basis(phases)):
        out.append(f"{basis.owner} basis (rows are basis vectors):")
        for vec in basis.vectors:
            out.append("  " + "  ".join(
                f"{z.real:+.12g}{z.imag:+.12g}j" for z in vec
            ))
        out.append(f"  gram_defect = {_fmt(basis.gram_defect())}")
    _emit("\n".join(out) + "\n", args.output)
    return 0


def _crossover(phases, kind_a, kind_b, lo, hi, tol=1e-6) -> float:
    """Bisect the lambda where the two simulated fidelity curves cross."""

    def diff(lam):
        fa = jrsp_fidelity(run_jrsp(phases, noise=(kind_a, lam)), phases)
        fb = jrsp_fidelity(run_jrsp(phases, noise=(kind_b, lam)), phases)
        return fa - fb

    d_lo, d_hi = diff(lo), diff(hi)
    if d_lo * d_hi > 0:
        return math.nan
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if diff(mid) * d_lo <= 0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def _verify_phase_sets(args):
    sets = [
        ("zero", PhaseSpec.from_free_angles([0, 0, 0], [0, 0, 0])),
        ("30deg", PhaseSpec.from_free_angles([30] * 3, [30] * 3, degrees=True)),
        ("180deg", PhaseSpec.from_free_angles([180] * 3, [180] * 3, degrees=True)),
        ("300deg", PhaseSpec.from_free_angles([300] * 3, [300] * 3, degrees=True)),
    ]
    rng = np.random.default_rng(args.seed)
    for i in range(args.random_sets):
        sets.append((
            f"random{i}",
            PhaseSpec.from_free_angles(rng.uniform(0, 2 * math.pi, 3),
                                       rng.uniform(0, 2 * math.pi, 3)),
        ))
    return sets


def cmd_verify(args, parser) -> int:
    lambdas = np.linspace(0.0, 1.0, args.steps)
    phase_sets = _verify_phase_sets(args)
    lines = ["JRSP verification report", "=" * 40]
    lines.append(f"lambda grid: {args.steps} points on [0, 1]")
    lines.append(f"phase sets: {', '.join(name for name, _ in phase_sets)}")
    lines.append("")
    failed = False
    worst: dict[NoiseKind, float] = {}
    deviant_rows: dict[NoiseKind, list] = {}
    for kind in NoiseKind:
        max_dev = 0.0
        rows_for_report = []
        for _, phases in phase_sets:
            rows = compare_with_simulation(kind, lambdas, phases)
            dev = max(r.abs_diff for r in rows)
            if dev > max_dev:
                max_dev = dev
                rows_for_report = rows
        worst[kind] = max_dev
        status = "OK" if max_dev < VERIFY_TOL else "DEVIATES"
        tag = "unambiguous" if kind in UNAMBIGUOUS else "ambiguous bracket"
        lines.append(f"{kind.value:<20s} max |sim - closed| = {max_dev:.3e}  "
                     f"[{tag}] {status}")
        if max_dev >= VERIFY_TOL:
            deviant_rows[kind] = rows_for_report
            if kind in UNAMBIGUOUS:
                failed = True
    lines.append("")

    # Kraus completeness certificate at the grid points.
    max_defect = max(
        completeness_defect(kraus_set(kind, lam))
        for kind in NoiseKind for lam in lambdas
    )
    lines.append(f"kraus completeness defect (all channels): {max_defect:.3e}")

    # Phase damping: corrected vs as-printed Kraus set against the same
    # closed-form target.
    ph = phase_sets[1][1]
    corrected = compare_with_simulation(NoiseKind.PHASE_DAMPING, lambdas, ph)
    printed = compare_with_simulation(
        NoiseKind.PHASE_DAMPING, lambdas, ph,
        channel_factory=lambda lam: kraus_set(
            NoiseKind.PHASE_DAMPING, lam, phase_damping_as_printed=True),
    )
    lines.append("")
    lines.append("phase damping Kraus variants vs closed form:")
    lines.append(f"  corrected (trace preserving): max dev = "
                 f"{max(r.abs_diff for r in corrected):.3e}")
    lines.append(f"  as-printed (leaky E0):        max dev = "
                 f"{max(r.abs_diff for r in printed):.3e}")

    # Depolarizing grouping variants.
    lines.append("")
    lines.append("depolarizing closed-form grouping variants (max dev over sets):")
    for grouping in ("factored", "split"):
        dev = max(
            max(r.abs_diff for r in compare_with_simulation(
                NoiseKind.DEPOLARIZING, lambdas, phases,
                depolarizing_grouping=grouping))
            for _, phases in phase_sets
        )
        lines.append(f"  {grouping:<9s} max dev = {dev:.3e}")

    # Crossover of the amplitude-damping and phase-flip curves at the 30
    # degree preset.
    ph30 = phase_sets[1][1]
    cross = _crossover(ph30, NoiseKind.AMPLITUDE_DAMPING, NoiseKind.PHASE_FLIP,
                       0.5, 0.9)
    lines.append("")
    lines.append(f"amplitude-damping / phase-flip crossover (30deg): "
                 f"lambda = {cross:.4f}")

    # Per-lambda residuals for every deviating channel.
    for kind, rows in deviant_rows.items():
        lines.append("")
        lines.append(f"residuals for {kind.value} (worst phase set):")
        for r in rows:
            if r.abs_diff >= VERIFY_TOL:
                lines.append(f"  lambda={_fmt(r.lam):<8s} sim={_fmt(r.fidelity_sim)} "
                             f"closed={_fmt(r.fidelity_closed)} "
                             f"diff={r.abs_diff:.3e}")

    lines.append("")
    lines.append("RESULT: " + ("FAIL (unambiguous closed form deviates)"
                               if failed else "PASS"))
    _emit("\n".join(lines) + "\n", args.output)

    if args.figure_dir:
        from .plotting import render_comparison_figure
        outdir = Path(args.figure_dir)
        outdir.mkdir(parents=True, exist_ok=True)
        for kind in NoiseKind:
            rows = compare_with_simulation(kind, lambdas, ph30)
            render_comparison_figure(
                kind.value, rows, str(outdir / f"{kind.value}.png"))
    return 2 if failed else 0


def build_parser() -> _Parser:
    parser = _Parser(prog="jrsp", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser("sweep", help="fidelity sweep over lambda")
    p_sweep.add_argument("--channel", default="all",
                         choices=[k.value for k in NoiseKind] + ["all"])
    p_sweep.add_argument("--lambda-start", type=float, default=0.0)
    p_sweep.add_argument("--lambda-end", type=float, default=1.0)
    p_sweep.add_argument("--steps", type=int, default=101)
    _add_phase_args(p_sweep)
    p_sweep.add_argument("--mode", default="case1",
                         choices=[m.value for m in AssistMode])
    p_sweep.add_argument("--renormalized", action="store_true",
                         help="divide by the actual success-branch weight")
    p_sweep.add_argument("--format", default="csv", choices=("csv", "json"))
    p_sweep.add_argument("--output", metavar="PATH")
    p_sweep.add_argument("--figure", metavar="PATH",
                         help="also render the sweep as a figure")
    p_sweep.add_argument("--preset", choices=sorted(PRESETS))
    p_sweep.set_defaults(func=cmd_sweep)

    p_out = sub.add_parser("outcomes", help="16-branch noiseless outcome table")
    _add_phase_args(p_out)
    p_out.add_argument("--mode", default="case1",
                       choices=[m.value for m in AssistMode])
    p_out.add_argument("--output", metavar="PATH")
    p_out.set_defaults(func=cmd_outcomes)

    p_ver = sub.add_parser("verify", help="analytic-vs-simulation report")
    p_ver.add_argument("--steps", type=int, default=21)
    p_ver.add_argument("--random-sets", type=int, default=2)
    p_ver.add_argument("--seed", type=int, default=7)
    p_ver.add_argument("--output", metavar="PATH")
    p_ver.add_argument("--figure-dir", metavar="DIR",
                       help="render per-channel comparison figures here")
    p_ver.set_defaults(func=cmd_verify)

    p_bases = sub.add_parser("bases", help="dump both measurement bases")
    _add_phase_args(p_bases)
    p_bases.add_argument("--output", metavar="PATH")
    p_bases.set_defaults(func=cmd_bases)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args, parser)
    except SystemExit as exc:
        return int(exc.code or 0)


if __name__ == "__main__":
    raise SystemExit(main())
