"""Unsupervised aggregation (WSM/WPM), basic aggregation functions, a
simplex-constrained regression baseline and rank-based evaluation measures."""

import json

from ._core import (
    AggbenchError,
    AggregationModel,
    Dataset,
    Direction,
    Kind,
    ScoreFunction,
    combine_weights,
    dependency_weights_from_rhos,
    detect_direction,
    dominance_rank,
    entropy,
    entropy_weights,
    evaluate,
    fit,
    fit_score,
    kemeny_distance,
    kendall_tau_distance,
    load_csv,
    minmax_scale,
    project_to_simplex,
    score_matrix,
    sensitivity_ratio,
    solve_simplex_ls,
    spearman_rho,
)
from . import _core


def run_benchmark(config, output_dir=None, approaches=None, seed=None):
    """Run the benchmark described by a JSON config file; returns the report as a dict."""
    return json.loads(
        _core.run_benchmark_json(str(config), None if output_dir is None else str(output_dir), approaches, seed)
    )


def summarize(report, exclude_family=None):
    """Quartiles per approach and measure for a report dict from run_benchmark."""
    return _core.summarize_json(json.dumps(report), exclude_family)


__all__ = [name for name in dir() if not name.startswith("_") and name != "json"]
