"""Kahler-differential semimodules and moduli dimensions of plane branches."""

import json as _json

from ._core import BranchmodError, PairClass, blow_up, parse_class, run_command
from . import _core

__all__ = [
    "BranchmodError",
    "PairClass",
    "apery",
    "blow_up",
    "dimension",
    "invariants",
    "parse_class",
    "run_command",
    "semimodule",
    "trajectory",
    "verify",
]


def _pair(obj):
    return parse_class(obj) if isinstance(obj, str) else obj


def invariants(pair):
    return _json.loads(_core.invariants_json(_pair(pair)))


def apery(pair):
    return _json.loads(_core.apery_json(_pair(pair)))


def semimodule(pair, upto):
    return _json.loads(_core.semimodule_json(_pair(pair), upto))


def trajectory(pair):
    return _json.loads(_core.trajectory_json(_pair(pair)))


def dimension(pair):
    return _json.loads(_core.dimension_json(_pair(pair)))


def verify(pair, seeds=(1, 2, 3), precision=None):
    return _json.loads(_core.verify_json(_pair(pair), list(seeds), precision))
