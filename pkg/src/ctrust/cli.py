"""Command-line entry point: ``ctrust {gen,run,propagate,lattice,bdd,demo}``.

Exit codes: 0 success, 2 invalid input, 3 I/O failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import fixture
from .benchgen import GeneratorSpec, gen_scenario
from .errors import CtrustError
from .harness import fmt, orders_for, run_experiment, summarize, to_csv, to_jsonl
from .lattice import build_partial_order, expertise_priority, linear_extensions
from .model import Scenario
from .obdd import build_propagated, reduce, size_report
from .propagation import detect_peer_disagreement, propagate_all, propagate_chain
from .rules import DEFAULT_RULES, RuleSpec

EXIT_OK, EXIT_INVALID, EXIT_IO = 0, 2, 3


class _IOFailure(Exception):
    pass


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _IOFailure(f"cannot read {path}: {exc.strerror or exc}") from exc


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise _IOFailure(f"cannot write {out}: {exc.strerror or exc}") from exc


def _load_scenario(path: str) -> Scenario:
    return Scenario.from_json(_read_text(path))


def _generator_spec(args) -> GeneratorSpec:
    spec = GeneratorSpec()
    if getattr(args, "spec", None):
        spec = GeneratorSpec.from_dict(json.loads(_read_text(args.spec)))
    if getattr(args, "seed", None) is not None:
        spec = GeneratorSpec.from_dict({**spec.to_dict(), "seed": args.seed})
    if getattr(args, "profile", None):
        spec = spec.with_profile(args.profile)
    return spec


def _scenario_from_args(args) -> Scenario:
    if args.scenario:
        return _load_scenario(args.scenario)
    return gen_scenario(_generator_spec(args))


def _rules(names: Sequence[str] | None) -> list[RuleSpec]:
    if not names:
        return list(DEFAULT_RULES)
    return [RuleSpec.parse(n) for n in names]


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


# -- subcommands ----------------------------------------------------------

def cmd_gen(args) -> None:
    scenario = gen_scenario(_generator_spec(args))
    _write(scenario.to_json() + "\n", args.out)


def cmd_run(args) -> None:
    scenario = _scenario_from_args(args)
    orders = orders_for(scenario, args.all_orders) if args.all_orders else None
    results = run_experiment(scenario, _rules(args.rule), orders, workers=args.workers)
    if args.summary:
        rows = [s.to_dict() for s in summarize(results)]
        if args.format == "jsonl":
            text = "".join(json.dumps(r) + "\n" for r in rows)
        else:
            header = list(rows[0])
            text = ",".join(header) + "\n" + "".join(
                ",".join(fmt(r[k]) for k in header) + "\n" for r in rows
            )
    else:
        text = to_jsonl(results) if args.format == "jsonl" else to_csv(results)
    _write(text, args.out)


def cmd_propagate(args) -> None:
    scenario = _scenario_from_args(args)
    rule = RuleSpec.parse(args.rule)
    orders = orders_for(scenario, args.order_index + 1)
    if args.order_index >= len(orders):
        raise CtrustError(f"only {len(orders)} linear extension(s) exist")
    result = propagate_all(scenario, args.config, orders[args.order_index], rule)
    traces = [t.to_dict() for t in result.traces]
    if args.predicate is not None:
        traces = [traces[args.predicate]]
    _write(_dumps({"rule": rule.name, "config": args.config,
                   "order_index": args.order_index, "traces": traces}), args.out)


def cmd_lattice(args) -> None:
    scenario = _load_scenario(args.scenario) if args.scenario else fixture.intersection_scenario()
    po = build_partial_order(scenario.systems)
    payload = po.to_dict()
    payload["extensions"] = [
        list(o) for o in linear_extensions(po, args.extensions, expertise_priority(scenario.systems))
    ]
    _write(_dumps(payload), args.out)


def cmd_bdd(args) -> None:
    rule = RuleSpec.parse(args.rule)
    report = size_report(args.n, rule)
    payload = {"n": report.n, "rule": report.rule, "unreduced": report.unreduced,
               "propagated": report.propagated, "reduced": report.reduced}
    if args.verbose:
        payload["reduced_terminals_only"] = report.terminals_merged
    text = _dumps(payload)
    if args.dump == "dot":
        text += reduce(build_propagated(args.n, rule)).to_dot()
    _write(text, args.out)


def demo_intersection(n_extensions: int = 3) -> str:
    """Human-readable walk through the intersection use case."""
    scenario = fixture.intersection_scenario()
    po = build_partial_order(scenario.systems)
    lines = [f'Predicate: "{fixture.PREDICATE_LABEL}" (1 = pedestrian detected), truth = 1', ""]
    lines.append("vehicle  belief  target_px  roi_pct  depth_rank  pinned_rank")
    for k, v in enumerate(fixture.VEHICLES):
        lines.append(f"{v.number:>7}  {int(v.belief):>6}  {v.target_pixels:>9g}  "
                     f"{v.roi_coverage_pct:>7g}  {po.depth_rank[k]:>10}  {v.pinned_rank:>11}")
    cover = ", ".join(f"{a + 1}>{b + 1}" for a, b in po.cover_edges)
    lines += ["", f"Cover edges (vehicle numbers): {cover}"]
    disagreement = detect_peer_disagreement(scenario.configurations[0], 0)
    lines.append(f"Peer disagreement on raw beliefs: {str(disagreement).lower()}")

    extensions = orders_for(scenario, n_extensions)
    x = scenario.configurations[0].bits[:, 0]
    for k in (2, 3):
        rule = RuleSpec.n_expert(k)
        lines += ["", f"Rule {rule.name}"]
        for m, order in enumerate(extensions):
            trace = propagate_chain(order, [bool(x[a]) for a in order], rule)
            result = run_experiment(scenario, [rule], [order])[0]
            path = "-".join(str(a + 1) for a in order)
            lines.append(
                f"  path {m + 1} [{path}]: raw {''.join(str(int(v)) for v in trace.raw)}"
                f" -> aggregated {''.join(str(int(v)) for v in trace.aggregated)};"
                f" corrected={result.tally.corrected} introduced={result.tally.introduced}"
            )
    return "\n".join(lines) + "\n"


def cmd_demo(args) -> None:
    _write(demo_intersection(n_extensions=args.extensions), args.out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ctrust", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, scenario=True):
        if scenario:
            p.add_argument("--scenario", help="scenario JSON file (default: generate one)")
            p.add_argument("--spec", help="generator spec JSON, used without --scenario")
            p.add_argument("--seed", type=int, help="override the generator seed")
            p.add_argument("--profile", choices=["dist1", "dist2", "dist3", "dist4"])
        p.add_argument("--out", help="output file (default: stdout)")

    p = sub.add_parser("gen", help="generate a synthetic scenario")
    p.add_argument("--spec", help="generator spec JSON")
    p.add_argument("--seed", type=int)
    p.add_argument("--profile", choices=["dist1", "dist2", "dist3", "dist4"])
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("run", help="sweep rules over a scenario, one row per configuration")
    common(p)
    p.add_argument("--rule", action="append", help="rule name, repeatable (default: all six)")
    p.add_argument("--format", choices=["csv", "jsonl"], default="csv")
    p.add_argument("--all-orders", type=int, default=0, metavar="N",
                   help="sweep the first N linear extensions instead of the default order")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--summary", action="store_true", help="print per-rule means instead of rows")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("propagate", help="print propagation traces for one configuration")
    common(p)
    p.add_argument("--rule", required=True)
    p.add_argument("--order-index", type=int, default=0)
    p.add_argument("--config", type=int, default=0)
    p.add_argument("--predicate", type=int)
    p.set_defaults(func=cmd_propagate)

    p = sub.add_parser("lattice", help="dominance lattice of a scenario (default: intersection)")
    p.add_argument("--scenario")
    p.add_argument("--extensions", type=int, default=8)
    p.add_argument("--out")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("bdd", help="diagram sizes for the propagated belief")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--rule", default="n-expert:2")
    p.add_argument("--dump", choices=["dot"])
    p.add_argument("--verbose", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_bdd)

    p = sub.add_parser("demo", help="intersection use case walk-through")
    p.add_argument("--extensions", type=int, default=3)
    p.add_argument("--out")
    p.set_defaults(func=cmd_demo)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except _IOFailure as exc:
        print(f"ctrust: {exc}", file=sys.stderr)
        return EXIT_IO
    except (CtrustError, json.JSONDecodeError, ValueError) as exc:
        print(f"ctrust: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
