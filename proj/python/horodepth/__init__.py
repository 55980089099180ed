"""Horospherical depth on Euclidean space, the Poincare ball and the SPD cone."""

import json

from . import _core
from ._core import DomainError, ParseError, UsageError, busemann, generate, sample_depth, selftest

__all__ = [
    "DomainError",
    "ParseError",
    "UsageError",
    "busemann",
    "default_config",
    "experiment",
    "frechet_mean",
    "generate",
    "median",
    "region",
    "sample_depth",
    "selftest",
]


def region(manifold, dim, data, alpha, m=180, seed=0, grid=False, two_sided=False):
    """Depth region thresholds as a dict (same layout as the CLI's region output)."""
    return json.loads(_core.region_json(manifold, dim, data, alpha, m, seed, grid, two_sided))


def median(manifold, dim, data, m=180, seed=0, grid=False):
    return json.loads(_core.median_json(manifold, dim, data, m, seed, grid))


def frechet_mean(manifold, dim, data):
    return json.loads(_core.frechet_json(manifold, dim, data))


def default_config():
    return json.loads(_core.default_config_json())


def experiment(name, config):
    """Runs an experiment; config is a dict of overrides on the default configuration."""
    full = default_config()
    full.update(config)
    text = _core.experiment_jsonl(name, json.dumps(full))
    return [json.loads(line) for line in text.splitlines()]
