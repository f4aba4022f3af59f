"""Capacity toolkit for vector symbolic architectures."""

import json

from . import _core
from ._core import (  # noqa: F401
    BloomBundle,
    Codebook,
    CountBundle,
    HopfieldNet,
    IoError,
    MapBBundle,
    MapIBundle,
    SymbolSet,
    agreement_probability,
    bloom_intersection_estimate,
    bloom_size_estimate,
    bundle_bloom,
    bundle_count,
    bundle_sign,
    depth_agreement_probability,
    dot_estimate,
    empty_intersection_test,
    generalized_intersection_estimate,
    h_mk,
    intersection_estimate,
    intersection_size,
    l1_distance,
    l1_distance_estimate,
    load_bundle,
    membership_test,
    norm_sq_estimate,
    recall,
    save_bundle,
    sketch,
    train_columns,
    wedgedot,
)

rng_version = _core.rng_version


def size(arch, task, **params):
    """Sizing result as a dict, e.g. size("mapi", "norm", eps=0.5, delta=0.05)."""
    return json.loads(_core.size_json(arch, task, {k: float(v) for k, v in params.items()}))


def experiment(config):
    """Run an experiment config (dict) and return the CSV text."""
    return _core.experiment_csv(json.dumps(config))


def calibrate(arch, task, target=0.05, trials=200, seed=0, threads=1, **params):
    return json.loads(
        _core.calibrate_json(arch, task, {k: float(v) for k, v in params.items()}, target, trials, seed, threads)
    )
