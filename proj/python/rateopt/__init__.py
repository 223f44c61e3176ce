"""Closed-form power allocation for two-way relaying.

Scenario-level helpers accept dicts and return parsed reports; everything else
is re-exported from the compiled core.
"""

import json as _json

from ._core import (
    ChannelState,
    ConfigError,
    EffectiveGains,
    GridSearchResult,
    PowerAllocation,
    SnrPair,
    Unachievable,
    WeightTooSkewed,
    common_rate,
    common_rate_alpha,
    common_rate_powers,
    draw_channel,
    effective_gains,
    grid_search,
    max_min_point,
    mix_seed,
    omega_contains,
    recover_powers,
    signal_snr_estimate,
    snr_pair,
    snr_sum_budget,
    theta_point,
    upa_allocation,
    weighted_optimal_snrs,
    weighted_sum_rate,
)
from . import _core

__all__ = [
    "ChannelState",
    "ConfigError",
    "EffectiveGains",
    "GridSearchResult",
    "PowerAllocation",
    "SnrPair",
    "Unachievable",
    "WeightTooSkewed",
    "common_rate",
    "common_rate_alpha",
    "common_rate_powers",
    "draw_channel",
    "effective_gains",
    "grid_search",
    "max_min_point",
    "mix_seed",
    "omega_contains",
    "recover_powers",
    "signal_snr_estimate",
    "snr_pair",
    "snr_sum_budget",
    "solve",
    "sweep_csv",
    "theta_point",
    "upa_allocation",
    "verify",
    "weighted_optimal_snrs",
    "weighted_sum_rate",
]


def solve(scenario: dict) -> dict:
    return _json.loads(_core.solve(_json.dumps(scenario)))


def verify(scenario: dict, threads: int = 1) -> dict:
    return _json.loads(_core.verify(_json.dumps(scenario), threads))


def sweep_csv(scenario: dict, threads: int = 1) -> str:
    return _core.sweep_csv(_json.dumps(scenario), threads)
