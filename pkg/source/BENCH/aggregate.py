"""
Per-(algorithm, dimension, preprocessing) means with two-sided Student-t
confidence intervals, and the time/quality Pareto frontier.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import stats

from common import config

# Table order of the experiments; anything else sorts after, by name
ALGO_ORDER = {
    "LLL": 0,
    "BKZ5": 1,
    "PotLLL": 2,
    "PotLLL2": 3,
    "DeepLLL5": 4,
    "BKZ10": 5,
    "DeepLLL10": 6,
}

MIN_TIME = 1e-9


@dataclass(frozen=True)
class AggregateRow:
    algo: str
    dim: int
    preprocess: bool
    count: int
    mean_hermite_root: float
    ci_low: float
    ci_high: float
    mean_log_time: float
    log_time_ci_low: float
    log_time_ci_high: float


def confidence_interval(values, level: float = config.CI_LEVEL):
    """(mean, low, high); a single sample gives a zero-width interval."""
    sample = np.asarray(values, dtype=np.float64)
    mean = float(np.mean(sample))
    if sample.size < 2:
        return mean, mean, mean
    sem = float(np.std(sample, ddof=1)) / math.sqrt(sample.size)
    half = float(stats.t.ppf(0.5 + level / 2, sample.size - 1)) * sem
    return mean, mean - half, mean + half


def _sort_key(row: AggregateRow):
    return (row.dim, ALGO_ORDER.get(row.algo, len(ALGO_ORDER)), row.algo, not row.preprocess)


def aggregate(records, level: float = config.CI_LEVEL) -> list:
    groups = {}
    for record in records:
        if not record.ok:
            continue
        groups.setdefault((record.algo, record.dim, record.preprocess), []).append(record)

    rows = []
    for (algo, dim, preprocess), group in groups.items():
        mean, low, high = confidence_interval([r.hermite_root for r in group], level)
        log_times = [math.log(max(r.elapsed_s, MIN_TIME)) for r in group]
        t_mean, t_low, t_high = confidence_interval(log_times, level)
        rows.append(AggregateRow(algo, dim, preprocess, len(group), mean, low, high, t_mean, t_low, t_high))
    return sorted(rows, key=_sort_key)


def _dominates(a: AggregateRow, b: AggregateRow) -> bool:
    no_worse = a.mean_hermite_root <= b.mean_hermite_root and a.mean_log_time <= b.mean_log_time
    better = a.mean_hermite_root < b.mean_hermite_root or a.mean_log_time < b.mean_log_time
    return no_worse and better


def pareto_frontier(rows) -> list:
    """Rows of each dimension that no other row of that dimension beats on both time and quality."""
    rows = list(rows)
    return [
        row for row in rows
        if not any(other.dim == row.dim and _dominates(other, row) for other in rows)
    ]
