"""Strategy selection across the solvers, plus a corpus benchmark."""
from __future__ import annotations

import csv
import io
import logging
import time
from dataclasses import dataclass, field
from pathlib import Path

from .cactus import is_cactus, solve_cactus
from .colorcoding import solve_deterministic, solve_randomized
from .core import Instance, SolveOutcome, is_f_conforming, trivial_outcome
from .fen import feedback_edge_number, solve_fen
from .kernelize import turing_split_universal
from .oracle import oracle_exists, oracle_shortest
from .statespace import build_type_index, solve_statespace

log = logging.getLogger(__name__)

STRATEGIES = ("auto", "oracle", "statespace", "fen", "cactus", "colorcoding")


@dataclass(frozen=True)
class PortfolioPolicy:
    fen_budget: int = 20
    type_budget: int = 24
    color_budget: int = 64
    strategy: str = "auto"
    time_budget: float | None = None  # seconds for the oracle fallback
    epsilon: float | None = None  # set to use the randomized color-coding driver
    seed: int = 0
    k: int | None = None  # overrides the instance's max_vertices

    def __post_init__(self) -> None:
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}; pick one of {STRATEGIES}")
        for name in ("fen_budget", "type_budget", "color_budget"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")


@dataclass
class StrategyReport:
    chosen: str | None = None
    attempts: list[tuple[str, str, str]] = field(default_factory=list)

    def note(self, name: str, out: SolveOutcome) -> None:
        self.attempts.append((name, out.status.value, out.reason))

    def summary(self) -> str:
        return "; ".join(f"{n}: {st} ({why})" for n, st, why in self.attempts)


def certificate_ok(instance: Instance, out: SolveOutcome) -> bool:
    cert = out.certificate
    if cert is None:
        return False
    if cert.vertices[0] != instance.s or cert.vertices[-1] != instance.t:
        return False
    if instance.max_vertices is not None and cert.num_vertices > instance.max_vertices:
        return False
    return bool(is_f_conforming(instance.graph, cert, require_simple=True))


def _solve_universal(instance: Instance, policy: PortfolioPolicy) -> SolveOutcome:
    best: SolveOutcome | None = None
    for sub in turing_split_universal(instance):
        out = solve_statespace(sub.instance, policy.type_budget)
        if not out.is_yes and not out.is_no:
            out = oracle_shortest(sub.instance)
        if out.is_yes:
            lifted = SolveOutcome.yes(sub.remap.lift(out.certificate), "universal-source split")
            if best is None or lifted.length < best.length:
                best = lifted
    return best or SolveOutcome.no("universal-source split: every subinstance is No")


def _colorcoding(instance: Instance, policy: PortfolioPolicy) -> SolveOutcome:
    k = instance.max_vertices or instance.graph.n
    if policy.epsilon is not None:
        return solve_randomized(
            instance, k, policy.epsilon, policy.seed, color_budget=policy.color_budget
        )
    return solve_deterministic(instance, k, color_budget=policy.color_budget)


def _oracle(instance: Instance, policy: PortfolioPolicy) -> SolveOutcome:
    deadline = None if policy.time_budget is None else time.monotonic() + policy.time_budget
    if instance.max_vertices is not None:
        return oracle_shortest(instance, deadline)
    return oracle_exists(instance, deadline)


def _forced(instance: Instance, policy: PortfolioPolicy) -> SolveOutcome:
    name = policy.strategy
    if name == "oracle":
        return _oracle(instance, policy)
    if name == "statespace":
        return solve_statespace(instance, policy.type_budget)
    if name == "fen":
        return solve_fen(instance, policy.fen_budget)
    if name == "cactus":
        if instance.max_vertices is not None:
            return SolveOutcome.inconclusive("cactus solver answers existence only")
        if not is_cactus(instance.graph):
            return SolveOutcome.inconclusive("graph is not a cactus")
        return solve_cactus(instance)
    return _colorcoding(instance, policy)


def solve(instance: Instance, policy: PortfolioPolicy | None = None) -> tuple[SolveOutcome, StrategyReport]:
    policy = policy or PortfolioPolicy()
    if policy.k is not None:
        instance = instance.with_budget(policy.k)
    report = StrategyReport()
    trivial = trivial_outcome(instance)
    if trivial is not None:
        report.chosen = "trivial"
        report.note("trivial", trivial)
        return trivial, report

    if policy.strategy != "auto":
        candidates = [(policy.strategy, lambda: _forced(instance, policy))]
    else:
        g = instance.graph
        candidates = []
        if instance.max_vertices is None and is_cactus(g):
            candidates.append(("cactus", lambda: solve_cactus(instance)))
        if feedback_edge_number(g) <= policy.fen_budget:
            candidates.append(("fen", lambda: solve_fen(instance, policy.fen_budget)))
        if build_type_index(g).kd <= policy.type_budget:
            candidates.append(("statespace", lambda: solve_statespace(instance, policy.type_budget)))
        if g.degree(instance.s) == g.n - 1:
            candidates.append(("universal", lambda: _solve_universal(instance, policy)))
        if instance.max_vertices is not None:
            candidates.append(("colorcoding", lambda: _colorcoding(instance, policy)))
        candidates.append(("oracle", lambda: _oracle(instance, policy)))

    for name, run in candidates:
        out = run()
        report.note(name, out)
        if out.is_yes:
            assert certificate_ok(instance, out), f"{name} returned an invalid certificate"
        if out.is_yes or out.is_no:
            report.chosen = name
            return out, report
    return SolveOutcome.inconclusive("all strategies inconclusive: " + report.summary()), report


BENCH_COLUMNS = ("instance", "strategy", "answer", "length", "wall_time")


def bench(corpus: str | Path, policy: PortfolioPolicy | None = None) -> list[dict[str, str]]:
    from .formats import parse_sdg

    rows = []
    for path in sorted(Path(corpus).glob("*.sdg")):
        try:
            instance = parse_sdg(path.read_text(encoding="utf-8"))
        except (OSError, ValueError) as exc:
            log.warning("skipping %s: %s", path.name, exc)
            continue
        start = time.perf_counter()
        out, report = solve(instance, policy)
        elapsed = time.perf_counter() - start
        rows.append(
            {
                "instance": path.name,
                "strategy": report.chosen or "none",
                "answer": out.status.value,
                "length": "" if out.length is None else str(out.length),
                "wall_time": f"{elapsed:.6f}",
            }
        )
    return rows


def bench_csv(rows: list[dict[str, str]]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=BENCH_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()
