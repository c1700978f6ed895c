"""Rule sweeps over scenarios and their tabular output."""
from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import EmptyResults, UndefinedRatio, ValidationError
from .lattice import TotalOrder, expertise_order, expertise_orders
from .model import Scenario
from .propagation import propagate_all
from .reliability import ErrorTally, collaborative_reliability, tally
from .rules import RuleSpec

CSV_HEADER = (
    "rule", "order", "config", "unchanged_correct", "unchanged_error", "corrected",
    "introduced", "individual_err_pct", "introduced_pct", "corrected_pct", "r_c",
)


@dataclass(frozen=True)
class ExperimentResult:
    rule: str
    order: int
    config: int
    tally: ErrorTally

    @property
    def cells(self) -> int:
        return self.tally.total

    @property
    def individual_err_pct(self) -> float:
        t = self.tally
        return 100.0 * (t.unchanged_error + t.corrected) / self.cells

    @property
    def introduced_pct(self) -> float:
        return 100.0 * self.tally.introduced / self.cells

    @property
    def corrected_pct(self) -> float:
        return 100.0 * self.tally.corrected / self.cells

    @property
    def unchanged_pct(self) -> float:
        t = self.tally
        return 100.0 * (t.unchanged_correct + t.unchanged_error) / self.cells

    @property
    def r_c(self) -> float | None:
        try:
            return collaborative_reliability(self.tally)
        except UndefinedRatio:
            return None

    def row(self) -> dict:
        return {
            "rule": self.rule,
            "order": self.order,
            "config": self.config,
            **self.tally.to_dict(),
            "individual_err_pct": self.individual_err_pct,
            "introduced_pct": self.introduced_pct,
            "corrected_pct": self.corrected_pct,
            "r_c": self.r_c,
        }


def _evaluate(scenario: Scenario, rule: RuleSpec, order: TotalOrder, configs: Iterable[int]):
    out = []
    for c in configs:
        y = propagate_all(scenario, c, order, rule).y
        out.append(tally(scenario.configurations[c], y, scenario.truth))
    return out


def _evaluate_job(job):
    return _evaluate(*job)


def run_experiment(
    scenario: Scenario,
    rules: Sequence[RuleSpec],
    orders: Sequence[TotalOrder] | None = None,
    workers: int = 1,
) -> list[ExperimentResult]:
    """Propagate and tally every (rule, order, configuration) triple.

    Rows come out rule-major, then order, then configuration, regardless
    of how many workers were used. ``orders`` defaults to the single
    mean-quality order of the scenario's agents.
    """
    if not rules:
        raise ValidationError("no rules given")
    if orders is None:
        orders = [expertise_order(scenario.systems)]
    if not orders:
        raise ValidationError("no orders given")

    n_cfg = len(scenario.configurations)
    jobs = [(scenario, rule, tuple(order), range(n_cfg)) for rule in rules for order in orders]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            tallies = list(pool.map(_evaluate_job, jobs))
    else:
        tallies = [_evaluate_job(job) for job in jobs]

    results = []
    labels = [(rule.name, o) for rule in rules for o in range(len(orders))]
    for (name, o), job_tallies in zip(labels, tallies):
        for c, t in enumerate(job_tallies):
            results.append(ExperimentResult(name, o, c, t))
    return results


@dataclass(frozen=True)
class RuleSummary:
    rule: str
    rows: int
    mean_individual_err_pct: float
    mean_introduced_pct: float
    mean_corrected_pct: float
    mean_r_c: float
    undefined_r_c: int

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def summarize(results: Sequence[ExperimentResult]) -> list[RuleSummary]:
    """Per-rule arithmetic means, rules in order of first appearance.

    The R^c mean skips rows where the ratio is undefined (no
    unchanged-correct and no corrected cells); those are counted in
    ``undefined_r_c``. If every row is undefined the mean is NaN.
    """
    if not results:
        raise EmptyResults("nothing to summarize")
    groups: dict[str, list[ExperimentResult]] = {}
    for r in results:
        groups.setdefault(r.rule, []).append(r)
    out = []
    for rule, rows in groups.items():
        ratios = [r.r_c for r in rows if r.r_c is not None]
        out.append(RuleSummary(
            rule=rule,
            rows=len(rows),
            mean_individual_err_pct=sum(r.individual_err_pct for r in rows) / len(rows),
            mean_introduced_pct=sum(r.introduced_pct for r in rows) / len(rows),
            mean_corrected_pct=sum(r.corrected_pct for r in rows) / len(rows),
            mean_r_c=sum(ratios) / len(ratios) if ratios else math.nan,
            undefined_r_c=len(rows) - len(ratios),
        ))
    return out


def fmt(value) -> str:
    """Six significant digits for floats; blank for undefined."""
    if value is None:
        return ""
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        return format(value, ".6g")
    return str(value)


def to_csv(results: Sequence[ExperimentResult]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in results:
        row = r.row()
        writer.writerow([fmt(row[k]) for k in CSV_HEADER])
    return buf.getvalue()


def to_jsonl(results: Sequence[ExperimentResult]) -> str:
    lines = []
    for r in results:
        row = r.row()
        for key in ("individual_err_pct", "introduced_pct", "corrected_pct", "r_c"):
            if row[key] is not None:
                row[key] = float(fmt(row[key]))
        lines.append(json.dumps(row))
    return "\n".join(lines) + "\n"


def orders_for(scenario: Scenario, count: int) -> list[TotalOrder]:
    """The first ``count`` expertise-first linear extensions."""
    return expertise_orders(scenario.systems, count)
