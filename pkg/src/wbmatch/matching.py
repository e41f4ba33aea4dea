"""Color template matching by channel-summed normalized cross-correlation.

The score of a placement is the sum over R, G, B of

    sum(T_c * W_c) / (sqrt(sum(T_c^2)) * sqrt(sum(W_c^2)))

where W_c is the query window under the template. There is no mean
subtraction, so each channel term lies in [0, 1] for nonnegative images
and the total score in [0, 3]. A channel whose template or window energy
is zero contributes 0 rather than NaN: a black region carries no
correlation evidence.

Two evaluators are provided: ``match_template`` scores every placement
directly and is the reference, while ``match_accelerated`` computes the
numerators with FFT correlation and the window energies with per-channel
summed-area tables, and must agree with the reference to 1e-6.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.signal import fftconvolve

from .errors import DimensionError


@dataclass(frozen=True)
class MatchOutcome:
    """Best placement of a template in a query image."""

    x: int
    y: int
    score: float
    score_map: Optional[np.ndarray] = None


def _validate_pair(query: np.ndarray, template: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    query = np.asarray(query, dtype=np.float64)
    template = np.asarray(template, dtype=np.float64)
    for name, arr in (("query", query), ("template", template)):
        if arr.ndim != 3 or arr.shape[2] != 3:
            raise ValueError(f"{name} must be HxWx3, got shape {arr.shape}")
    if template.shape[0] > query.shape[0] or template.shape[1] > query.shape[1]:
        raise DimensionError(
            f"template {template.shape[1]}x{template.shape[0]} exceeds "
            f"query {query.shape[1]}x{query.shape[0]}")
    return query, template


def ncc_score(query: np.ndarray, template: np.ndarray, x: int, y: int) -> float:
    """Normalized cross-correlation score of one template placement."""
    query, template = _validate_pair(query, template)
    th, tw = template.shape[:2]
    qh, qw = query.shape[:2]
    if not (0 <= x <= qw - tw and 0 <= y <= qh - th):
        raise ValueError(f"placement ({x}, {y}) outside the valid domain")
    window = query[y:y + th, x:x + tw]
    t_energy = np.sum(template * template, axis=(0, 1))
    w_energy = np.sum(window * window, axis=(0, 1))
    num = np.sum(template * window, axis=(0, 1))
    score = 0.0
    for c in range(3):
        if t_energy[c] == 0.0 or w_energy[c] == 0.0:
            continue
        score += num[c] / (math.sqrt(t_energy[c]) * math.sqrt(w_energy[c]))
    return float(score)


def match_template(query: np.ndarray, template: np.ndarray, keep_map: bool = False) -> MatchOutcome:
    """Score every valid placement directly and return the argmax.

    Ties break to the earliest placement in row-major scan order. This is
    the reference evaluator; it is quadratic in the image area and meant
    for verification-scale inputs.
    """
    query, template = _validate_pair(query, template)
    th, tw = template.shape[:2]
    qh, qw = query.shape[:2]
    scores = np.empty((qh - th + 1, qw - tw + 1), dtype=np.float64)
    for yy in range(scores.shape[0]):
        for xx in range(scores.shape[1]):
            scores[yy, xx] = ncc_score(query, template, xx, yy)
    best_y, best_x = np.unravel_index(np.argmax(scores), scores.shape)
    return MatchOutcome(
        x=int(best_x),
        y=int(best_y),
        score=float(scores[best_y, best_x]),
        score_map=scores if keep_map else None,
    )


def _window_energy(channel: np.ndarray, th: int, tw: int) -> np.ndarray:
    # Summed-area table of squared values; one table lookup per placement.
    sat = np.zeros((channel.shape[0] + 1, channel.shape[1] + 1), dtype=np.float64)
    np.cumsum(np.cumsum(channel * channel, axis=0), axis=1, out=sat[1:, 1:])
    energy = sat[th:, tw:] - sat[:-th, tw:] - sat[th:, :-tw] + sat[:-th, :-tw]
    # Cancellation can leave tiny negatives where the true sum is ~0.
    return np.maximum(energy, 0.0)


def match_accelerated(query: np.ndarray, template: np.ndarray, keep_map: bool = False) -> MatchOutcome:
    """FFT-accelerated equivalent of ``match_template``.

    Numerators come from FFT cross-correlation, window energies from
    summed-area tables, so the cost is O(W*H log(W*H)) regardless of
    template size.
    """
    query, template = _validate_pair(query, template)
    th, tw = template.shape[:2]
    qh, qw = query.shape[:2]
    scores = np.zeros((qh - th + 1, qw - tw + 1), dtype=np.float64)
    for c in range(3):
        t_chan = template[:, :, c]
        t_energy = float(np.sum(t_chan * t_chan))
        if t_energy == 0.0:
            continue
        num = fftconvolve(query[:, :, c], t_chan[::-1, ::-1], mode="valid")
        denom = math.sqrt(t_energy) * np.sqrt(_window_energy(query[:, :, c], th, tw))
        scores += np.divide(num, denom, out=np.zeros_like(num), where=denom > 0)
    best_y, best_x = np.unravel_index(np.argmax(scores), scores.shape)
    return MatchOutcome(
        x=int(best_x),
        y=int(best_y),
        score=float(scores[best_y, best_x]),
        score_map=scores if keep_map else None,
    )
