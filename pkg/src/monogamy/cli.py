"""Command line front end.

Three modes, selected by exactly one of --example, --verify, --state:

* --example K     emit the CSV curve data for one of four bundled
                  demonstration scenarios (fixed state and measure).
* --verify        run a randomized soundness campaign over seeded
                  Haar-random states and summarize the verdicts.
* --state PATH    evaluate the bound once for a state loaded from a
                  JSON state file.

Exit codes: 0 on success, 1 when an asserted bound is violated beyond
--tolerance, 2 on usage or input errors.  The environment variable
MONOGAMY_SEED overrides --seed.
"""
from __future__ import annotations

import argparse
import math
import os
import sys
from dataclasses import dataclass

from .bounds import BoundReport, alpha_grid, alpha_sweep, monogamy_report
from .measures import CONCURRENCE, CREN, EOF, MeasureKind, tsallis_kind
from .qstate import StateFileError, load_state
from .states import SchmidtParams, gsd3, haar_random, w_state

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2

_STATE_CSV_HEADER = (
    "measure,q,alpha,m,lhs,new_bound,baseline_weighted,baseline_sum,"
    "residual_new,residual_gap"
)
_SWEEP_CSV_HEADER = "alpha,lhs,new_bound,baseline_weighted,baseline_sum"
_VERIFY_CSV_HEADER = (
    "measure,q,alpha,tested,asserted,undetermined,inapplicable,"
    "min_residual_new,min_residual_gap"
)


def _fmt(v: float) -> str:
    return f"{float(v):.12g}"


def _scenario(k: int, q: float):
    """Bundled demonstration scenarios: (ket, measure)."""
    if k == 1:
        lam = (0.5, 0.5, math.sqrt(6) / 6, math.sqrt(6) / 6, math.sqrt(6) / 6)
        return gsd3(SchmidtParams(lam)), CONCURRENCE
    if k == 2:
        return w_state(3), EOF
    if k == 3:
        lam = (math.sqrt(5) / 5,) * 5
        return gsd3(SchmidtParams(lam)), CREN
    if k == 4:
        lam = (math.sqrt(5) / 5,) * 5
        return gsd3(SchmidtParams(lam)), tsallis_kind(q)
    raise ValueError(f"unknown scenario {k}; pick 1, 2, 3 or 4")


def _parse_measure(name: str, q: float) -> MeasureKind:
    name = name.strip().lower()
    if name == "tsallis":
        return tsallis_kind(q)
    return MeasureKind(name)


def _parse_order(text: str | None):
    if text is None:
        return None
    try:
        return tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise ValueError(f"--order expects comma-separated integers, got {text!r}")


def _parse_m(text: str):
    if text == "auto":
        return None
    try:
        return int(text)
    except ValueError:
        raise ValueError(f"--m expects an integer or 'auto', got {text!r}")


def _resolve_seed(args_seed: int) -> int:
    env = os.environ.get("MONOGAMY_SEED")
    if env is None:
        return args_seed
    try:
        return int(env)
    except ValueError:
        raise ValueError(f"MONOGAMY_SEED must be an integer, got {env!r}")


def _write_lines(lines, out_path):
    text = "\n".join(lines) + "\n"
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="monogamy",
        description="Weighted monogamy bounds for multiqubit entanglement measures.",
    )
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--example", type=int, metavar="K", help="demonstration scenario 1-4")
    mode.add_argument("--verify", action="store_true", help="randomized soundness campaign")
    mode.add_argument("--state", metavar="PATH", help="evaluate a JSON state file")
    p.add_argument(
        "--measure",
        default=None,
        help="concurrence|eof|cren|tsallis (comma-separated list with --verify)",
    )
    p.add_argument("--q", type=float, default=2.0, help="tsallis order, in [2, 3]")
    p.add_argument("--alpha", type=float, default=None, help="exponent for --state mode")
    p.add_argument("--alpha-min", type=float, default=None, help="sweep start (default: measure floor)")
    p.add_argument("--alpha-max", type=float, default=None, help="sweep end (default: 5)")
    p.add_argument("--alpha-step", type=float, default=None, help="sweep step (default: 0.05)")
    p.add_argument(
        "--alphas",
        default="floor,2,3",
        help="--verify exponents; 'floor' resolves per measure",
    )
    p.add_argument("--focus", type=int, default=0, help="focus qubit A")
    p.add_argument("--order", default=None, help="comma-separated pair order of the other qubits")
    p.add_argument("--m", default="auto", help="ladder split position, or 'auto'")
    p.add_argument("--n-qubits", type=int, default=3, help="register size for --verify")
    p.add_argument("--samples", type=int, default=100, help="random states for --verify")
    p.add_argument("--seed", type=int, default=0, help="base seed (MONOGAMY_SEED overrides)")
    p.add_argument("--tolerance", type=float, default=1e-9, help="violation threshold")
    p.add_argument("--out", default=None, help="write CSV here instead of stdout")
    return p


def _sweep_rows(reports: list[BoundReport]) -> list[str]:
    rows = [_SWEEP_CSV_HEADER]
    for r in reports:
        rows.append(
            ",".join(
                _fmt(v)
                for v in (r.alpha, r.lhs, r.new_bound, r.baseline_weighted, r.baseline_sum)
            )
        )
    return rows


def cmd_example(args) -> int:
    psi, measure = _scenario(args.example, args.q)
    lo = args.alpha_min if args.alpha_min is not None else measure.alpha_floor
    hi = args.alpha_max if args.alpha_max is not None else 5.0
    step = args.alpha_step if args.alpha_step is not None else 0.05
    reports = alpha_sweep(psi, args.focus, measure, alpha_grid(lo, hi, step), order=_parse_order(args.order), m=_parse_m(args.m))
    _write_lines(_sweep_rows(reports), args.out)
    return EXIT_OK


def cmd_state(args) -> int:
    psi = load_state(args.state)
    measure = _parse_measure(args.measure or "concurrence", args.q)
    alpha = args.alpha if args.alpha is not None else measure.alpha_floor
    report = monogamy_report(
        psi,
        args.focus,
        measure,
        alpha,
        order=_parse_order(args.order),
        m=_parse_m(args.m),
    )
    q = measure.q if measure.q is not None else math.nan
    print(f"state: {args.state}")
    print(f"qubits: {psi.n_qubits}  focus: {report.focus}  pair order: "
          + ",".join(str(b) for b in report.order))
    print(
        f"measure: {measure.label}  q: {_fmt(q)}  alpha: {_fmt(report.alpha)}  "
        f"m: {report.m}  asserted: {'yes' if report.asserted else 'no'}"
    )
    print("verdicts: " + ",".join(v.value for v in report.preconditions.verdicts))
    print("pair_values: " + ",".join(_fmt(v) for v in report.pair_values))
    print("weights: " + ",".join(_fmt(w) for w in report.weights))
    for field in ("lhs", "new_bound", "baseline_weighted", "baseline_sum",
                  "residual_new", "residual_gap"):
        print(f"{field}: {_fmt(getattr(report, field))}")
    if args.out is not None:
        row = ",".join(
            [measure.label]
            + [
                _fmt(v)
                for v in (
                    q,
                    report.alpha,
                    report.m,
                    report.lhs,
                    report.new_bound,
                    report.baseline_weighted,
                    report.baseline_sum,
                    report.residual_new,
                    report.residual_gap,
                )
            ]
        )
        _write_lines([_STATE_CSV_HEADER, row], args.out)
    if report.asserted and report.residual_new < -args.tolerance:
        return EXIT_VIOLATION
    return EXIT_OK


@dataclass(frozen=True)
class CampaignConfig:
    """Randomized soundness campaign settings.

    ``alphas`` entries are floats or the token 'floor', which resolves to
    each measure's own floor exponent; exponents that coincide after
    resolution run once.  Numeric entries must clear the floor of every
    selected measure.  State k is drawn with seed ``seed + k``, so runs
    are reproducible and order-independent.
    """

    n_qubits: int
    samples: int
    seed: int
    measures: tuple[MeasureKind, ...]
    alphas: tuple
    tolerance: float

    def __post_init__(self):
        if self.n_qubits < 3:
            raise ValueError(f"campaign needs at least 3 qubits, got {self.n_qubits}")
        if self.samples < 1:
            raise ValueError(f"campaign needs at least 1 sample, got {self.samples}")
        if not self.measures:
            raise ValueError("campaign needs at least one measure")
        if not self.alphas:
            raise ValueError("campaign needs at least one exponent")
        for a in self.alphas:
            if a == "floor":
                continue
            a = float(a)
            for kind in self.measures:
                if a < kind.alpha_floor - 1e-12:
                    raise ValueError(
                        f"alpha={a} below the {kind.label} floor {kind.alpha_floor}"
                    )


@dataclass(frozen=True)
class CampaignRow:
    measure: MeasureKind
    alpha: float
    tested: int
    asserted: int
    undetermined: int
    inapplicable: int
    min_residual_new: float
    min_residual_gap: float


def run_campaign(config: CampaignConfig) -> tuple[list[CampaignRow], bool]:
    """Run the campaign; returns summary rows and a violation flag."""
    states = [haar_random(config.n_qubits, config.seed + k) for k in range(config.samples)]
    rows: list[CampaignRow] = []
    violation = False
    for measure in config.measures:
        seen: set[float] = set()
        for token in config.alphas:
            alpha = measure.alpha_floor if token == "floor" else float(token)
            if alpha in seen:  # 'floor' can coincide with an explicit entry
                continue
            seen.add(alpha)
            n_asserted = n_undet = n_inapp = 0
            min_new = math.inf
            min_gap = math.inf
            for psi in states:
                report = monogamy_report(psi, 0, measure, alpha)
                min_gap = min(min_gap, report.residual_gap)
                if report.asserted:
                    n_asserted += 1
                    min_new = min(min_new, report.residual_new)
                    if report.residual_new < -config.tolerance:
                        violation = True
                elif report.preconditions.any_undetermined:
                    n_undet += 1
                else:
                    n_inapp += 1
            rows.append(
                CampaignRow(
                    measure=measure,
                    alpha=alpha,
                    tested=config.samples,
                    asserted=n_asserted,
                    undetermined=n_undet,
                    inapplicable=n_inapp,
                    min_residual_new=min_new if n_asserted else math.nan,
                    min_residual_gap=min_gap,
                )
            )
    return rows, violation


def cmd_verify(args) -> int:
    names = (args.measure or "concurrence,eof,cren,tsallis").split(",")
    kinds = tuple(_parse_measure(nm, args.q) for nm in names)
    tokens = []
    for tok in args.alphas.split(","):
        tok = tok.strip()
        if tok == "floor":
            tokens.append(tok)
        else:
            tokens.append(float(tok))
    config = CampaignConfig(
        n_qubits=args.n_qubits,
        samples=args.samples,
        seed=_resolve_seed(args.seed),
        measures=kinds,
        alphas=tuple(tokens),
        tolerance=args.tolerance,
    )
    rows, violation = run_campaign(config)
    print(
        f"verify: n_qubits={config.n_qubits} samples={config.samples} "
        f"seed={config.seed} tolerance={_fmt(config.tolerance)}"
    )
    csv_lines = [_VERIFY_CSV_HEADER]
    for r in rows:
        q = r.measure.q if r.measure.q is not None else math.nan
        csv_lines.append(
            ",".join(
                [r.measure.label]
                + [
                    _fmt(v)
                    for v in (q, r.alpha)
                ]
                + [str(v) for v in (r.tested, r.asserted, r.undetermined, r.inapplicable)]
                + [_fmt(r.min_residual_new), _fmt(r.min_residual_gap)]
            )
        )
        print(
            f"  {r.measure.label:<12} q={_fmt(q):<4} alpha={_fmt(r.alpha):<14} "
            f"tested={r.tested} asserted={r.asserted} undetermined={r.undetermined} "
            f"inapplicable={r.inapplicable} min_residual_new={_fmt(r.min_residual_new)} "
            f"min_residual_gap={_fmt(r.min_residual_gap)}"
        )
    if args.out is not None:
        _write_lines(csv_lines, args.out)
    if violation:
        print("result: VIOLATION (asserted bound broken beyond tolerance)")
        return EXIT_VIOLATION
    print("result: ok")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.example is not None:
            return cmd_example(args)
        if args.verify:
            return cmd_verify(args)
        return cmd_state(args)
    except (StateFileError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
