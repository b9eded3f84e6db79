"""Command-line front end.

Subcommands: classify | growth | sequence | family | scan | verify.
Exit codes: 0 success, 1 internal anomaly, 2 input or hypothesis rejection.
Floats in JSON output carry 17 significant digits; exact rationals are
rendered as "p/q" strings.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import acceptance
from .algnum import classify_growth_series, growth_classification_to_json_dict
from .diagram import (
    classify_sphericity,
    connectivity_report,
    dimension_at_most_two,
    euler_characteristic,
    system_from_json,
    system_to_json_dict,
)
from .errors import ClassificationAnomaly, CoxGrowthError, NotApplicable
from .families import (
    friendship,
    generate_family,
    scan_systems,
    triangulated_bouquet,
    uniform_system_report,
    wheel,
    windmill,
)
from .growth import growth_series, series_coefficients
from .sequences import convergence_report

EXIT_OK = 0
EXIT_ANOMALY = 1
EXIT_REJECTED = 2

VALID_PRECISIONS = (64, 128, 256, 512)


def _read_system(path: str):
    try:
        with open(path) as fh:
            text = fh.read()
        return system_from_json(text)
    except FileNotFoundError:
        raise NotApplicable(f"input file not found: {path}")
    except json.JSONDecodeError as exc:
        raise NotApplicable(f"parse error in {path}: line {exc.lineno} col {exc.colno}")


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def cmd_classify(args) -> int:
    system = _read_system(args.input)
    chi = euler_characteristic(system)
    dim_ok, witness = dimension_at_most_two(system)
    sph = classify_sphericity(system)
    payload = {
        "rank": system.rank,
        "edges": system_to_json_dict(system)["edges"],
        "chi": chi,
        "dimension_at_most_2": dim_ok,
        "sphericity": sph.verdict,
    }
    if not dim_ok:
        payload["rejection"] = f"rank-3 spherical parabolic at {witness}: dimension >= 3"
        _emit(args, payload)
        return EXIT_REJECTED
    if sph.verdict != "other":
        payload["rejection"] = f"system is {sph.verdict}"
        _emit(args, payload)
        return EXIT_REJECTED

    gs = growth_series(system)
    ladder = _ladder(args.precision)
    gc = classify_growth_series(gs, precision_ladder=ladder)
    payload.update(
        {
            "canonical_numerator": str(gs.canonical_numerator),
            "canonical_denominator_blocks": list(gs.canonical_denominator_blocks),
            "reduced_numerator": str(gs.numerator),
            "reduced_denominator": str(gs.denominator),
            "classification": growth_classification_to_json_dict(gc),
        }
    )
    if sph.advisory_warnings:
        payload["warnings"] = list(sph.advisory_warnings)
    _emit(args, payload, text_renderer=_render_classify)
    return EXIT_OK


def _render_classify(payload) -> str:
    lines = [
        f"rank {payload['rank']}, chi = {payload['chi']}, sphericity: {payload['sphericity']}",
        f"1/f(1/z) = ({payload['canonical_numerator']}) / [{','.join(map(str, payload['canonical_denominator_blocks']))}]",
        f"reduced:  ({payload['reduced_numerator']}) / ({payload['reduced_denominator']})",
    ]
    cls = payload["classification"]
    iv = cls["tau_interval"]
    lines.append(
        f"tau = {cls['tau']:.12f}  in ({iv['low']}, {iv['high']})"
    )
    lines.append(f"verdict: {cls['verdict']}")
    lines.append(f"stripped factor: {cls['stripped_factor']}")
    if cls["cyclotomic_factors"]:
        lines.append(f"cyclotomic factors (index, mult): {cls['cyclotomic_factors']}")
    for note in cls.get("notes", []):
        lines.append(f"note: {note}")
    return "\n".join(lines)


def cmd_growth(args) -> int:
    system = _read_system(args.input)
    gs = growth_series(system)
    coeffs = series_coefficients(gs, args.terms)
    payload = {
        "rank": system.rank,
        "chi": gs.chi,
        "canonical_numerator": str(gs.canonical_numerator),
        "canonical_denominator_blocks": list(gs.canonical_denominator_blocks),
        "reduced_numerator": str(gs.numerator),
        "reduced_denominator": str(gs.denominator),
        "coefficients": coeffs,
    }
    _emit(args, payload)
    return EXIT_OK


def cmd_sequence(args) -> int:
    system = _read_system(args.input)
    schedule = args.schedule
    report = convergence_report(system, schedule, epsilon=float(args.epsilon))
    payload = report.to_json_dict()
    _emit(args, payload, text_renderer=_render_sequence)
    return EXIT_OK


def _render_sequence(payload) -> str:
    lines = [
        f"pathway: {payload['pathway']}, base tau = {payload['base_tau']:.12f}",
        f"{'n':>6} {'chi':>4} {'tau':>18} {'gap bound':>12}  verdict",
    ]
    for s in payload["steps"]:
        lines.append(
            f"{s['n']:>6} {s['chi']:>4} {s['tau']:>18.12f} {s['gap_bound']:>12.3e}  {s['verdict']}"
        )
    lines.append(
        f"monotone: {payload['monotone']}, gap: {payload['convergence_gap']:.3e}, "
        f"converged at eps={payload['epsilon']}: {payload['converged']}"
    )
    return "\n".join(lines)


FAMILY_BUILDERS = {
    "wheel": lambda p, k: wheel(p[0], k),
    "windmill": lambda p, k: windmill(p[0], p[1], k),
    "friendship": lambda p, k: friendship(p[0], k),
    "triangulated-bouquet": lambda p, k: triangulated_bouquet(p[0], p[1], k),
}


def cmd_family(args) -> int:
    build = FAMILY_BUILDERS[args.kind]
    spec = build(args.params, args.label)
    system = generate_family(spec)
    payload = system_to_json_dict(system)
    if args.check:
        report = uniform_system_report(system)
        payload["hypotheses"] = {
            "edge_ratio": _frac_str(report.a),
            "edge_ratio_within_bound": report.a_within_bound,
            "contains_dominating_four_cycle": report.contains_four_cycle,
            "pass": report.hypotheses_pass,
        }
        payload["classification"] = growth_classification_to_json_dict(
            report.classification
        )
    print(json.dumps(payload, indent=2))
    return EXIT_OK


def cmd_scan(args) -> int:
    chi_min, chi_max = args.chi
    count = 0
    non_perron = []
    for system, gc in scan_systems(
        max_rank=args.max_rank,
        max_label=args.max_label,
        chi_min=chi_min,
        chi_max=chi_max,
    ):
        record = {
            "system": system_to_json_dict(system),
            "chi": euler_characteristic(system),
            "verdict": gc.primary_verdict,
            "tau": float(f"{gc.tau:.17g}"),
        }
        if gc.perron is not None and gc.perron.verdict != "perron":
            non_perron.append(record)
        print(json.dumps(record))
        count += 1
    print(
        json.dumps({"scanned": count, "non_perron": len(non_perron)}),
        file=sys.stderr,
    )
    return EXIT_OK if not non_perron else EXIT_ANOMALY


def cmd_verify(args) -> int:
    results = acceptance.run_all(seed=args.seed, fast=args.fast)
    summary = {"criteria": [], "all_pass": True}
    for r in results:
        line = f"[{'PASS' if r.passed else 'FAIL'}] {r.name} ({r.elapsed:.1f}s) {r.detail}"
        print(line)
        summary["criteria"].append(
            {"name": r.name, "passed": r.passed, "seconds": round(r.elapsed, 3), "detail": r.detail}
        )
        summary["all_pass"] = summary["all_pass"] and r.passed
    if args.format == "json":
        print(json.dumps(summary, indent=2))
    return EXIT_OK if summary["all_pass"] else EXIT_ANOMALY


def _ladder(precision: int):
    from .algnum import PRECISION_LADDER

    return tuple(p for p in PRECISION_LADDER if p >= precision) or (precision,)


def _emit(args, payload, text_renderer=None) -> None:
    if args.format == "json" or text_renderer is None:
        print(json.dumps(payload, indent=2))
    else:
        print(text_renderer(payload))


def _schedule(text: str) -> list[int]:
    values = [int(t) for t in text.replace(",", " ").split()]
    if any(a >= b for a, b in zip(values, values[1:])) or (values and min(values) < 7):
        raise argparse.ArgumentTypeError(
            "schedule must be strictly increasing integers >= 7"
        )
    return values


def _chi_range(text: str) -> tuple[int | None, int | None]:
    if ":" not in text:
        v = int(text)
        return v, v
    lo, hi = text.split(":", 1)
    return (int(lo) if lo else None, int(hi) if hi else None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coxgrowth",
        description="Growth series and growth-rate classification of "
        "dimension-<=2 Coxeter systems",
    )
    parser.add_argument("--format", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="full classification pipeline for one diagram")
    p.add_argument("--input", required=True)
    p.add_argument("--precision", type=int, choices=VALID_PRECISIONS, default=128)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("growth", help="growth series and word counts")
    p.add_argument("--input", required=True)
    p.add_argument("--terms", type=int, default=16)
    p.set_defaults(func=cmd_growth)

    p = sub.add_parser("sequence", help="edge-addition convergence report")
    p.add_argument("--input", required=True)
    p.add_argument("--schedule", type=_schedule, default=[7, 10, 20, 50, 100, 500, 2000])
    p.add_argument("--epsilon", default="1e-6")
    p.set_defaults(func=cmd_sequence)

    p = sub.add_parser("family", help="emit a family diagram as JSON")
    p.add_argument("kind", choices=sorted(FAMILY_BUILDERS))
    p.add_argument("params", type=int, nargs="+")
    p.add_argument("--label", type=int, default=3)
    p.add_argument("--check", action="store_true", help="also run the hypothesis checker")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("scan", help="exhaustive small-system scan (JSON lines)")
    p.add_argument("--max-rank", type=int, default=4)
    p.add_argument("--max-label", type=int, default=4)
    p.add_argument("--chi", type=_chi_range, default=(None, None))
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("verify", help="run the acceptance suite")
    p.add_argument("--seed", type=int, default=20240)
    p.add_argument("--fast", action="store_true", help="reduced sample sizes (smoke run)")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NotApplicable as exc:
        print(f"rejected: {exc}", file=sys.stderr)
        return EXIT_REJECTED
    except ClassificationAnomaly as exc:
        print(f"internal anomaly: {exc}", file=sys.stderr)
        return EXIT_ANOMALY
    except CoxGrowthError as exc:
        print(f"rejected: {exc}", file=sys.stderr)
        return EXIT_REJECTED


if __name__ == "__main__":
    sys.exit(main())
