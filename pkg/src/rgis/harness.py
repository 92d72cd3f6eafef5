"""Monte Carlo degree and isomorphism checks, experiment sweeps and the CSV record format."""

from __future__ import annotations

import csv
import io
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, fields
from typing import Iterable, Iterator

from .approx import approx_mis
from .common import DEFAULT_LCS_CAP, Mapping, iso_under_mapping, lcs_main, pair_iso_probability
from .decide import greedy_peel
from .exact import (
    DEFAULT_BRUTE_FORCE_CAP,
    BudgetError,
    EpsilonConfig,
    brute_force_mis,
    find_good_vertex,
    max_independent_set,
    mis_recursive_oracle,
)
from .graph import MASK64, generate_with_state, gnp

ALGOS = ("exact", "brute", "oracle", "approx", "greedy", "lcs")
BUDGET_EXCEEDED = "budget_exceeded"


def theoretical_mis_size(n: int, p: float) -> float:
    """Typical independence number ``2 log2 n / log2(1 / (1 - p))`` of G(n, p)."""
    return 2 * math.log2(n) / math.log2(1 / (1 - p))


@dataclass(frozen=True)
class MonteCarloReport:
    quantity: str
    trials: int
    observed: float
    predicted: float
    std_error: float

    @property
    def z_score(self) -> float:
        if self.std_error == 0:
            return 0.0 if self.observed == self.predicted else math.inf
        return (self.observed - self.predicted) / self.std_error


def _binomial_se(predicted: float, observed: float, trials: int) -> float:
    # the model's own variance when it predicts a proper probability
    rate = predicted if 0 < predicted < 1 else observed
    return math.sqrt(rate * (1 - rate) / trials)


def _report(quantity: str, hits: int, trials: int, predicted: float) -> MonteCarloReport:
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    observed = hits / trials
    return MonteCarloReport(quantity, trials, observed, predicted, _binomial_se(predicted, observed, trials))


def trial_seed(base: int, t: int) -> int:
    return (base + t) & MASK64


def mc_good_fraction(n: int, p: float, epsilon: float, trials: int, seed: int) -> MonteCarloReport:
    """Fraction of G(n, p) samples with a vertex of degree >= ``(p - epsilon) n``."""
    if not 0 < epsilon < p:
        raise ValueError(f"need 0 < epsilon < p (p={p}, epsilon={epsilon})")
    hits = sum(
        find_good_vertex(gnp(n, p, trial_seed(seed, t)), p, epsilon) is not None for t in range(trials)
    )
    return _report("good_fraction", hits, trials, 1.0)


def mc_min_degree_fraction(n: int, p: float, epsilon: float, trials: int, seed: int) -> MonteCarloReport:
    """Fraction of G(n, p) samples with a vertex of degree <= ``(p + epsilon) n``."""
    if p + epsilon >= 1:
        raise ValueError(f"need p + epsilon < 1 (p={p}, epsilon={epsilon})")
    threshold = (p + epsilon) * n
    hits = 0
    for t in range(trials):
        g = gnp(n, p, trial_seed(seed, t))
        if g.n and min(g.degree(v) for v in range(g.n)) <= threshold:
            hits += 1
    return _report("min_degree_fraction", hits, trials, 1.0)


def mc_mapping_iso_rate(k: int, p: float, q: float, trials: int, seed: int) -> MonteCarloReport:
    """How often the identity map between G(k, p) and G(k, q) is an isomorphism.

    Trial ``t`` draws both graphs from one stream seeded ``seed + t``, G first.
    """
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    identity = Mapping(tuple((v, v) for v in range(k)))
    vertices = range(k)
    hits = 0
    for t in range(trials):
        g, state = generate_with_state(k, p, trial_seed(seed, t))
        h, _ = generate_with_state(k, q, state)
        hits += iso_under_mapping(g, vertices, h, vertices, identity)
    return _report("mapping_iso_rate", hits, trials, pair_iso_probability(p, q, k))


@dataclass
class ExperimentRecord:
    algo: str
    n: int
    m: int | None
    p: float
    q: float | None
    seed: int
    epsilon: float | None
    result_size: int | None
    nodes_expanded: int | None
    fallbacks: int | None
    path_taken: str
    elapsed_ms: float | None

    def sort_key(self):
        return (self.algo, self.n, self.p, self.seed, self.m or 0, self.q or 0.0)


COLUMNS = [f.name for f in fields(ExperimentRecord)]
_INT_COLUMNS = {"n", "m", "seed", "result_size", "nodes_expanded", "fallbacks"}
_FLOAT_COLUMNS = {"p", "q", "epsilon", "elapsed_ms"}


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_records(records: Iterable[ExperimentRecord], out: io.TextIOBase) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(COLUMNS)
    for rec in records:
        writer.writerow([_cell(v) for v in astuple(rec)])


def records_to_csv(records: Iterable[ExperimentRecord]) -> str:
    buf = io.StringIO()
    write_records(records, buf)
    return buf.getvalue()


def _parse_cell(name: str, text: str):
    if text == "":
        return None
    if name in _INT_COLUMNS:
        return int(text)
    if name in _FLOAT_COLUMNS:
        return float(text)
    return text


def parse_records(text: str) -> list[ExperimentRecord]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header != COLUMNS:
        raise ValueError(f"unexpected CSV header {header!r}")
    return [ExperimentRecord(*(_parse_cell(c, v) for c, v in zip(COLUMNS, row))) for row in reader]


@dataclass
class SweepConfig:
    n: list[int]
    p: list[float]
    seeds: list[int]
    algos: list[str]
    epsilon: float | None = None
    cap: int = DEFAULT_BRUTE_FORCE_CAP
    lcs_cap: int = DEFAULT_LCS_CAP
    m: list[int] | None = None
    q: list[float] | None = None
    threads: int = 1

    def __post_init__(self):
        unknown = set(self.algos) - set(ALGOS)
        if unknown:
            raise ValueError(f"unknown algorithms {sorted(unknown)}; choose from {ALGOS}")

    @classmethod
    def from_dict(cls, d: dict) -> SweepConfig:
        known = {f.name for f in fields(cls)}
        extra = set(d) - known
        if extra:
            raise ValueError(f"unknown sweep config keys {sorted(extra)}")
        return cls(**d)


@dataclass(frozen=True)
class _Task:
    algo: str
    n: int
    p: float
    seed: int
    epsilon: float | None
    cap: int
    lcs_cap: int
    m: int | None = None
    q: float | None = None


def _tasks(cfg: SweepConfig) -> Iterator[_Task]:
    for algo in cfg.algos:
        for n in cfg.n:
            for p in cfg.p:
                for seed in cfg.seeds:
                    if algo == "lcs":
                        for m in cfg.m or [n]:
                            for q in cfg.q or [p]:
                                yield _Task(algo, n, p, seed, None, cfg.cap, cfg.lcs_cap, m, q)
                    else:
                        eps = cfg.epsilon if algo in ("exact", "approx") else None
                        if algo in ("exact", "approx") and eps is None:
                            eps = EpsilonConfig.for_p(p).epsilon
                        yield _Task(algo, n, p, seed, eps, cfg.cap, cfg.lcs_cap)


def _run_task(task: _Task) -> ExperimentRecord:
    size = nodes = fallbacks = None
    path = task.algo
    start = time.perf_counter()
    try:
        if task.algo == "lcs":
            g, state = generate_with_state(task.n, task.p, task.seed)
            h, _ = generate_with_state(task.m, task.q, state)
            res = lcs_main(g, h, task.p, task.q, cap=task.lcs_cap)
            size, path = res.size, res.path_taken
        else:
            g = gnp(task.n, task.p, task.seed)
            if task.algo == "exact":
                chosen, stats = max_independent_set(g, task.p, EpsilonConfig(task.epsilon, task.cap))
                size, nodes, fallbacks = len(chosen), stats.nodes_expanded, stats.fallback_invocations
                path = "branch"
            elif task.algo == "approx":
                res = approx_mis(g, task.p, EpsilonConfig(task.epsilon, task.cap))
                size, nodes, fallbacks = len(res.chosen), res.nodes_expanded, res.fallbacks
            elif task.algo == "brute":
                size = len(brute_force_mis(g, task.cap))
            elif task.algo == "oracle":
                size = mis_recursive_oracle(g, task.cap)
            elif task.algo == "greedy":
                size = len(greedy_peel(g))
    except BudgetError:
        size = nodes = fallbacks = None
        path = BUDGET_EXCEEDED
    elapsed = (time.perf_counter() - start) * 1000.0
    return ExperimentRecord(
        task.algo, task.n, task.m, task.p, task.q, task.seed, task.epsilon,
        size, nodes, fallbacks, path, elapsed,
    )


def run_experiment(cfg: SweepConfig) -> list[ExperimentRecord]:
    """One record per (algorithm, instance), sorted by (algo, n, p, seed)."""
    tasks = list(_tasks(cfg))
    if cfg.threads > 1:
        with ProcessPoolExecutor(max_workers=cfg.threads) as pool:
            records = list(pool.map(_run_task, tasks))
    else:
        records = [_run_task(t) for t in tasks]
    records.sort(key=ExperimentRecord.sort_key)
    return records


def strip_timing(records: Iterable[ExperimentRecord]) -> list[ExperimentRecord]:
    return [
        ExperimentRecord(**{**{c: getattr(r, c) for c in COLUMNS}, "elapsed_ms": None}) for r in records
    ]
