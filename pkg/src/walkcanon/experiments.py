"""Monte Carlo runs over seeded G(n, p) samples.

Sample ``i`` of a run with base seed ``s`` uses graph seed
``splitmix64(s + (i + 1) * 0x9E3779B97F4A7C15 mod 2**64)``. The finalizer is a
bijection on 64-bit words and the golden-ratio increment is odd, so the
per-sample seeds are pairwise distinct for any ``2**64`` consecutive indices.

Records depend only on the configuration; wall-clock timings are kept apart
from them so CSV output is byte-identical between runs and worker counts.

Acceptance thresholds used against these reports (0.90 for three-walk
discreteness at n=1000, 0.05 for two-walk discreteness, +-30% around
sqrt(n)/pi for the equal-pair count) are desk-scale choices: the underlying
bounds are asymptotic with no stated constants.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from statistics import NormalDist
from typing import Callable, Iterable, Sequence

import numpy as np

from .graph import Graph, random_gnp
from .refinement import is_cr_discrete
from .walks import WM_SINGULAR_CAP, canonize_walk3, is_wm_discrete, walk_signature

__all__ = [
    "EXPERIMENTS",
    "ExperimentConfig",
    "ExperimentReport",
    "aggregate",
    "count_equal_pairs",
    "exhaustive_statistics",
    "experiment_equal_pairs",
    "experiment_w2",
    "experiment_w3",
    "experiment_wm_cr",
    "run_experiment",
    "sample_seed",
    "wilson_interval",
]

REPORT_SCHEMA = "walkcanon.experiment/1"
EXPERIMENTS = ("w3", "w2", "equal_pairs", "wm_cr")
_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_Z95 = NormalDist().inv_cdf(0.975)


def _splitmix64(z: int) -> int:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & _MASK64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & _MASK64
    return z ^ (z >> 31)


def sample_seed(base: int, index: int) -> int:
    return _splitmix64((base + (index + 1) * _GOLDEN) & _MASK64)


def wilson_interval(successes: int, trials: int, z: float = _Z95) -> tuple[float, float]:
    if trials <= 0:
        raise ValueError("need at least one trial")
    phat = successes / trials
    denom = 1 + z * z / trials
    centre = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials)) / denom
    lo = 0.0 if successes == 0 else max(0.0, centre - half)
    hi = 1.0 if successes == trials else min(1.0, centre + half)
    return (lo, hi)


@dataclass(frozen=True)
class ExperimentConfig:
    n: int
    samples: int
    seed: int = 0
    p: float = 0.5
    experiment: str = "w3"

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ValueError(f"unknown experiment {self.experiment!r}; choose from {EXPERIMENTS}")
        if self.samples < 1:
            raise ValueError("samples must be at least 1")
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("p must lie in [0, 1]")
        if not 0 <= self.seed < 1 << 64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.experiment == "w3" and self.n ** 3 >= 1 << 64:
            raise ValueError("n**3 must fit in 64 bits")
        if self.experiment in ("w2", "equal_pairs") and self.n ** 2 >= 1 << 64:
            raise ValueError("n**2 must fit in 64 bits")
        if self.experiment == "wm_cr" and self.n > WM_SINGULAR_CAP:
            raise ValueError(f"wm_cr needs n <= {WM_SINGULAR_CAP}")


# per-graph statistics ---------------------------------------------------------


def count_equal_pairs(rows: np.ndarray) -> int:
    """Number of unordered vertex pairs whose rows coincide."""
    if rows.shape[0] < 2:
        return 0
    _, counts = np.unique(rows, axis=0, return_counts=True)
    return int(sum(c * (c - 1) // 2 for c in counts.tolist()))


def _outcome_w3(g: Graph) -> dict:
    return {"discrete": canonize_walk3(g).discrete}


def _outcome_w2(g: Graph) -> dict:
    return {"discrete": count_equal_pairs(walk_signature(g, 2).rows) == 0}


def _outcome_equal_pairs(g: Graph) -> dict:
    return {"equal_pairs": count_equal_pairs(walk_signature(g, 2).rows)}


def _outcome_wm_cr(g: Graph) -> dict:
    return {"wm_discrete": bool(is_wm_discrete(g)), "cr_discrete": is_cr_discrete(g)}


_OUTCOMES: dict[str, Callable[[Graph], dict]] = {
    "w3": _outcome_w3,
    "w2": _outcome_w2,
    "equal_pairs": _outcome_equal_pairs,
    "wm_cr": _outcome_wm_cr,
}


def _run_sample(args: tuple[str, int, float, int, int]) -> tuple[dict, float]:
    kind, n, p, base, index = args
    seed = sample_seed(base, index)
    start = time.perf_counter()
    g = random_gnp(n, p, seed)
    outcome = _OUTCOMES[kind](g)
    return {"index": index, "seed": seed, **outcome}, time.perf_counter() - start


# aggregation --------------------------------------------------------------------


def _proportion(successes: int, trials: int) -> dict:
    lo, hi = wilson_interval(successes, trials)
    return {"successes": successes, "trials": trials, "fraction": successes / trials, "wilson95": [lo, hi]}


def aggregate(experiment: str, n: int, records: Sequence[dict]) -> dict:
    """Summary statistics; a pure function of the per-sample records."""
    trials = len(records)
    if experiment in ("w3", "w2"):
        return _proportion(sum(r["discrete"] for r in records), trials)
    if experiment == "equal_pairs":
        xs = [r["equal_pairs"] for r in records]
        mean = sum(xs) / trials
        var = sum((x - mean) ** 2 for x in xs) / (trials - 1) if trials > 1 else 0.0
        pairs = n * (n - 1) // 2
        reference = math.sqrt(n) / math.pi
        return {
            "trials": trials,
            "mean": mean,
            "variance": var,
            "sqrt_n_over_pi": reference,
            "mean_over_reference": mean / reference,
            "pair_probability": mean / pairs if pairs else 0.0,
            "pair_probability_asymptotic": 2 / (math.pi * n ** 1.5),
        }
    if experiment == "wm_cr":
        cells = {
            f"wm_{'discrete' if wm else 'not_discrete'}__cr_{'discrete' if cr else 'not_discrete'}": 0
            for wm in (True, False)
            for cr in (True, False)
        }
        for r in records:
            wm = "discrete" if r["wm_discrete"] else "not_discrete"
            cr = "discrete" if r["cr_discrete"] else "not_discrete"
            cells[f"wm_{wm}__cr_{cr}"] += 1
        return {"trials": trials, "cells": cells, "counterexamples": cells["wm_discrete__cr_not_discrete"]}
    raise ValueError(f"unknown experiment {experiment!r}")


@dataclass
class ExperimentReport:
    config: ExperimentConfig
    records: list[dict]
    aggregates: dict
    timings: list[float] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "schema": REPORT_SCHEMA,
            "config": asdict(self.config),
            "aggregates": self.aggregates,
            "records": self.records,
            "timings": {"per_sample_seconds": self.timings},
        }

    def to_csv(self) -> str:
        fields = list(self.records[0].keys()) if self.records else ["index", "seed"]
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        for r in self.records:
            writer.writerow({k: int(v) if isinstance(v, bool) else v for k, v in r.items()})
        return buf.getvalue()

    def write(self, prefix: str) -> tuple[str, str]:
        json_path, csv_path = f"{prefix}.json", f"{prefix}.csv"
        with open(json_path, "w") as fh:
            json.dump(self.to_json(), fh, indent=2)
            fh.write("\n")
        with open(csv_path, "w", newline="") as fh:
            fh.write(self.to_csv())
        return json_path, csv_path


def default_workers() -> int:
    return int(os.environ.get("WALKCANON_WORKERS", "1"))


def run_experiment(
    cfg: ExperimentConfig,
    workers: int | None = None,
    extra_graphs: Iterable[Graph] = (),
) -> ExperimentReport:
    """Run ``cfg``; ``extra_graphs`` are appended as samples without seeds."""
    workers = default_workers() if workers is None else workers
    jobs = [(cfg.experiment, cfg.n, cfg.p, cfg.seed, i) for i in range(cfg.samples)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_sample, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        results = [_run_sample(job) for job in jobs]
    results.sort(key=lambda rt: rt[0]["index"])
    records = [r for r, _ in results]
    timings = [t for _, t in results]
    for j, g in enumerate(extra_graphs):
        records.append({"index": cfg.samples + j, "seed": None, **_OUTCOMES[cfg.experiment](g)})
    return ExperimentReport(cfg, records, aggregate(cfg.experiment, cfg.n, records), timings)


def experiment_w3(cfg: ExperimentConfig, workers: int | None = None) -> ExperimentReport:
    return run_experiment(_as(cfg, "w3"), workers)


def experiment_w2(cfg: ExperimentConfig, workers: int | None = None) -> ExperimentReport:
    return run_experiment(_as(cfg, "w2"), workers)


def experiment_equal_pairs(cfg: ExperimentConfig, workers: int | None = None) -> ExperimentReport:
    return run_experiment(_as(cfg, "equal_pairs"), workers)


def experiment_wm_cr(
    cfg: ExperimentConfig,
    workers: int | None = None,
    extra_graphs: Iterable[Graph] = (),
) -> ExperimentReport:
    return run_experiment(_as(cfg, "wm_cr"), workers, extra_graphs)


def _as(cfg: ExperimentConfig, kind: str) -> ExperimentConfig:
    if cfg.experiment == kind:
        return cfg
    return ExperimentConfig(n=cfg.n, samples=cfg.samples, seed=cfg.seed, p=cfg.p, experiment=kind)


# exhaustive weighting -------------------------------------------------------------


def all_graphs(n: int) -> Iterable[Graph]:
    """Every labelled graph on ``n`` vertices; 2**(n choose 2) of them."""
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, (pq for b, pq in enumerate(pairs) if mask >> b & 1))


def exhaustive_statistics(n: int) -> dict[str, Fraction]:
    """Exact G(n, 1/2) values of the three walk statistics by full enumeration."""
    if n > 6:
        raise ValueError("exhaustive enumeration is limited to n <= 6")
    total = 0
    w3 = w2 = 0
    pairs = 0
    for g in all_graphs(n):
        total += 1
        w3 += _outcome_w3(g)["discrete"]
        x = _outcome_equal_pairs(g)["equal_pairs"]
        w2 += x == 0
        pairs += x
    return {
        "w3_discrete": Fraction(w3, total),
        "w2_discrete": Fraction(w2, total),
        "mean_equal_pairs": Fraction(pairs, total),
    }
