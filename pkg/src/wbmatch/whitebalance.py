"""White balance adjustment for single- and multi-illuminant scenes.

The multi-illuminant path partitions the image into N blocks, estimates a
source white point (with its pixel location) per block, and corrects every
pixel with an inverse-distance-weighted blend of the per-block Bradford
adaptations. With N = 1 it degenerates, bit for bit, to the conventional
single-illuminant adjustment.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .color import SRGB_TO_XYZ, XYZ_TO_SRGB, adaptation_matrix, cosine_similarity, rgb_to_xyz
from .errors import DegenerateRegionError, InvalidPartitionError
from .evaluation import Rect


class WhitePointEstimator(Enum):
    """Statistics-based illuminant estimators."""

    WHITE_PATCH = "whitepatch"
    GREY_WORLD = "greyworld"

    @classmethod
    def from_name(cls, name: str) -> "WhitePointEstimator":
        for kind in cls:
            if kind.value == name.lower():
                return kind
        raise ValueError(f"unknown estimator {name!r}")


@dataclass(frozen=True)
class LocatedWhitePoint:
    """A source white point with the pixel coordinates that carry it.

    ``block_index`` is 1-based, matching the block order of the partition.
    """

    xyz: np.ndarray
    x: int
    y: int
    block_index: int


@dataclass(frozen=True)
class BlockPartition:
    """An exact tiling of a width x height frame into rows x cols blocks."""

    rows: int
    cols: int
    blocks: tuple[Rect, ...]


def _require_image(image: np.ndarray) -> np.ndarray:
    image = np.asarray(image, dtype=np.float64)
    if image.ndim != 3 or image.shape[2] != 3 or image.shape[0] < 1 or image.shape[1] < 1:
        raise ValueError(f"expected an HxWx3 image, got shape {image.shape}")
    return image


def estimate_white_point(region: np.ndarray, kind: WhitePointEstimator) -> np.ndarray:
    """Estimate the illuminant of a linear-RGB region as an XYZ white point.

    WHITE_PATCH takes the per-channel maximum, GREY_WORLD the per-channel
    mean; either is then converted through the RGB->XYZ matrix.

    Raises:
        DegenerateRegionError: if the region is empty or entirely black.
    """
    pixels = np.asarray(region, dtype=np.float64).reshape(-1, 3)
    if pixels.shape[0] == 0:
        raise DegenerateRegionError("cannot estimate a white point from an empty region")
    if kind is WhitePointEstimator.WHITE_PATCH:
        rgb = pixels.max(axis=0)
    elif kind is WhitePointEstimator.GREY_WORLD:
        rgb = pixels.mean(axis=0)
    else:
        raise ValueError(f"unknown estimator {kind!r}")
    if not np.any(rgb > 0):
        raise DegenerateRegionError("region is all black; white point is degenerate")
    return rgb_to_xyz(rgb)


def partition_blocks(width: int, height: int, n: int) -> BlockPartition:
    """Tile a frame into n blocks on a near-square grid.

    The grid uses rows = the largest divisor of n that is <= sqrt(n)
    (1 x n for primes) and cols = n / rows. Remainder pixels are absorbed
    by the rightmost column and bottom row of blocks, so the tiling is
    exact for any frame at least as large as the grid.
    """
    if n < 1:
        raise InvalidPartitionError(f"block count must be >= 1, got {n}")
    rows = 1
    for r in range(int(np.sqrt(n)), 0, -1):
        if n % r == 0:
            rows = r
            break
    cols = n // rows
    if width < cols or height < rows:
        raise InvalidPartitionError(
            f"cannot split a {width}x{height} frame into a {cols}x{rows} grid")

    def edges(extent: int, count: int) -> list[int]:
        base, rem = divmod(extent, count)
        sizes = [base] * (count - rem) + [base + 1] * rem
        out = [0]
        for s in sizes:
            out.append(out[-1] + s)
        return out

    xs = edges(width, cols)
    ys = edges(height, rows)
    blocks = tuple(
        Rect(xs[c], ys[r], xs[c + 1] - xs[c], ys[r + 1] - ys[r])
        for r in range(rows)
        for c in range(cols)
    )
    return BlockPartition(rows=rows, cols=cols, blocks=blocks)


def locate_white_points(
    image: np.ndarray,
    partition: BlockPartition,
    kind: WhitePointEstimator,
) -> list[LocatedWhitePoint]:
    """Estimate one white point per block and pin it to a pixel.

    The carrying pixel is the one in the block whose XYZ value has the
    highest cosine similarity with the block estimate; ties go to the
    first pixel in row-major scan order.
    """
    image = _require_image(image)
    located = []
    for index, block in enumerate(partition.blocks, start=1):
        view = image[block.y:block.bottom, block.x:block.right]
        wp = estimate_white_point(view, kind)
        sims = cosine_similarity(rgb_to_xyz(view), wp)
        local_y, local_x = np.unravel_index(np.argmax(sims), sims.shape)
        located.append(LocatedWhitePoint(
            xyz=wp,
            x=block.x + int(local_x),
            y=block.y + int(local_y),
            block_index=index,
        ))
    return located


def _apply_matrix_field(image: np.ndarray, field: np.ndarray) -> np.ndarray:
    # Shared by the single- and multi-illuminant paths so that the N=1 case
    # reproduces the single-illuminant output bit for bit.
    xyz = np.einsum("ij,hwj->hwi", SRGB_TO_XYZ, image)
    adapted = np.einsum("hwij,hwj->hwi", field, xyz)
    return np.einsum("ij,hwj->hwi", XYZ_TO_SRGB, adapted)


def single_wb(
    image: np.ndarray,
    ground_truth: np.ndarray,
    kind: WhitePointEstimator = WhitePointEstimator.WHITE_PATCH,
) -> np.ndarray:
    """Conventional white balance: one estimate over the whole frame,
    one Bradford adaptation applied to every pixel."""
    image = _require_image(image)
    source = estimate_white_point(image, kind)
    matrix = adaptation_matrix(source, ground_truth)
    field = np.broadcast_to(matrix, (image.shape[0], image.shape[1], 3, 3))
    return _apply_matrix_field(image, field)


def n_white_balance(
    image: np.ndarray,
    ground_truth: np.ndarray,
    n: int,
    kind: WhitePointEstimator = WhitePointEstimator.WHITE_PATCH,
    weight_power: float = 2.0,
) -> np.ndarray:
    """Multi-illuminant white balance with N per-block corrections.

    Every pixel is corrected by the convex combination of the per-block
    adaptation matrices, weighted by inverse distance (raised to
    ``weight_power``) from the pixel to each located white point. A pixel
    that coincides with a located white point uses that block's matrix
    alone.
    """
    image = _require_image(image)
    if weight_power <= 0:
        raise ValueError(f"weight power must be > 0, got {weight_power}")
    height, width = image.shape[:2]
    partition = partition_blocks(width, height, n)
    located = locate_white_points(image, partition, kind)
    matrices = np.stack([adaptation_matrix(p.xyz, ground_truth) for p in located])

    ys, xs = np.mgrid[0:height, 0:width]
    px = np.array([p.x for p in located], dtype=np.float64)
    py = np.array([p.y for p in located], dtype=np.float64)
    dist = np.sqrt((xs[None, :, :] - px[:, None, None]) ** 2
                   + (ys[None, :, :] - py[:, None, None]) ** 2)

    # Coincident pixels produce inf weights and an inf/inf NaN here; they
    # are rewritten as one-hot rows below.
    with np.errstate(divide="ignore", invalid="ignore"):
        weights = dist ** -float(weight_power)
        lam = weights / np.sum(weights, axis=0)

    # Coincident pixels: exactly one block owns them (blocks are disjoint),
    # and the convex combination collapses to that block's matrix.
    hit = dist == 0.0
    if np.any(hit):
        hit_any = np.any(hit, axis=0)
        lam[:, hit_any] = np.where(hit[:, hit_any], 1.0, 0.0)

    field = np.einsum("nhw,nij->hwij", lam, matrices)
    return _apply_matrix_field(image, field)
