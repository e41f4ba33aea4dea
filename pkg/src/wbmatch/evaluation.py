"""Detection evaluation: pixel-aligned rectangles, intersection over union,
and per-adjustment mean-IoU tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import EmptyTableError


@dataclass(frozen=True)
class Rect:
    """Axis-aligned pixel rectangle with top-left corner (x, y)."""

    x: int
    y: int
    w: int
    h: int

    def __post_init__(self):
        if self.w < 1 or self.h < 1:
            raise ValueError(f"rectangle extent must be >= 1, got {self.w}x{self.h}")
        if self.x < 0 or self.y < 0:
            raise ValueError(f"rectangle origin must be >= 0, got ({self.x}, {self.y})")

    @property
    def right(self) -> int:
        return self.x + self.w

    @property
    def bottom(self) -> int:
        return self.y + self.h

    @property
    def area(self) -> int:
        return self.w * self.h


@dataclass(frozen=True)
class EvalRecord:
    """One detection compared against its ground truth."""

    image_id: str
    detected: Rect
    ground_truth: Rect
    iou: float
    label: str


def iou(a: Rect, b: Rect) -> float:
    """Intersection over union of two rectangles, in exact pixel counts.

    Equivalently TP / (TP + FP + FN) where TP, FP, FN are pixel counts of
    a&b, a-b, and b-a. Returns 1.0 iff the rectangles coincide, 0.0 iff
    they are disjoint.
    """
    iw = min(a.right, b.right) - max(a.x, b.x)
    ih = min(a.bottom, b.bottom) - max(a.y, b.y)
    inter = max(0, iw) * max(0, ih)
    union = a.area + b.area - inter
    return inter / union


def make_record(image_id: str, detected: Rect, ground_truth: Rect, label: str) -> EvalRecord:
    return EvalRecord(image_id, detected, ground_truth, iou(detected, ground_truth), label)


def evaluate_batch(records: Iterable[tuple[str, Rect, Rect, str]]) -> list[tuple[str, int, float]]:
    """Group records by adjustment label and average their IoU.

    Each record is (image id, detected rect, ground-truth rect, label).
    Returns (label, count, mean_iou) rows in order of first appearance.

    Raises:
        EmptyTableError: if no records were supplied.
    """
    groups: dict[str, list[float]] = {}
    for image_id, detected, truth, label in records:
        groups.setdefault(label, []).append(iou(detected, truth))
    if not groups:
        raise EmptyTableError("no records to evaluate")
    return [(label, len(vals), sum(vals) / len(vals)) for label, vals in groups.items()]


def mean_iou_csv(rows: Iterable[tuple[str, int, float]]) -> str:
    """Render (label, count, mean_iou) rows as CSV with 3-decimal means."""
    lines = ["adjustment,count,mean_iou"]
    for label, count, mean in rows:
        lines.append(f"{label},{count},{mean:.3f}")
    return "\n".join(lines) + "\n"
