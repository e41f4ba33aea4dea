"""End-to-end matching pipeline: adjust the query and template, then match.

The template is always corrected with the conventional single-illuminant
adjustment (it is captured under one light source); the query is corrected
per the configured mode. Mode ``none`` skips both adjustments and serves
as the unadjusted baseline.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .color import D65
from .matching import MatchOutcome, match_accelerated
from .whitebalance import WhitePointEstimator, n_white_balance, single_wb

MODES = ("none", "wb", "nwb")


@dataclass(frozen=True)
class RunConfig:
    """Adjustment parameters for one pipeline run."""

    mode: str = "nwb"
    n: int = 9
    estimator: WhitePointEstimator = WhitePointEstimator.WHITE_PATCH
    ground_truth: np.ndarray = field(default_factory=lambda: D65.copy())
    weight_power: float = 2.0

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.n < 1:
            raise ValueError(f"block count must be >= 1, got {self.n}")
        if self.weight_power <= 0:
            raise ValueError(f"weight power must be > 0, got {self.weight_power}")


def adjust_query(image: np.ndarray, config: RunConfig) -> np.ndarray:
    """Apply the configured white balance mode to a query image.

    Adjusted output is clamped to [0, 1] so downstream correlation scores
    keep their nonnegative-input range.
    """
    if config.mode == "none":
        return image
    if config.mode == "wb":
        adjusted = single_wb(image, config.ground_truth, config.estimator)
    else:
        adjusted = n_white_balance(image, config.ground_truth, config.n,
                                   config.estimator, config.weight_power)
    return np.clip(adjusted, 0.0, 1.0)


def adjust_template(image: np.ndarray, config: RunConfig) -> np.ndarray:
    """Single-illuminant correction for the template (skipped in mode none)."""
    if config.mode == "none":
        return image
    adjusted = single_wb(image, config.ground_truth, config.estimator)
    return np.clip(adjusted, 0.0, 1.0)


def run_match(query: np.ndarray, template: np.ndarray,
              config: RunConfig) -> tuple[MatchOutcome, np.ndarray, np.ndarray]:
    """Adjust both images per the config and locate the template.

    Returns the match outcome together with the adjusted query and
    template that were actually correlated.
    """
    adjusted_query = adjust_query(query, config)
    adjusted_template = adjust_template(template, config)
    outcome = match_accelerated(adjusted_query, adjusted_template)
    return outcome, adjusted_query, adjusted_template
