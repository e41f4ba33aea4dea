"""Multi-illuminant white balancing and color template matching."""

from .color import (
    D50,
    D65,
    WHITE_POINTS,
    adaptation_matrix,
    cosine_similarity,
    rgb_to_xyz,
    srgb_decode,
    srgb_encode,
    xyz_to_rgb,
)
from .errors import (
    DegenerateRegionError,
    DegenerateWhitePointError,
    DimensionError,
    EmptyTableError,
    ImageFormatError,
    InvalidPartitionError,
    InvalidSpecError,
    WbMatchError,
)
from .evaluation import EvalRecord, Rect, evaluate_batch, iou, make_record, mean_iou_csv
from .matching import MatchOutcome, match_accelerated, match_template, ncc_score
from .pipeline import RunConfig, adjust_query, adjust_template, run_match
from .scenegen import (
    Illuminant,
    SceneBundle,
    SceneSpec,
    generate_scene,
    illumination_field,
    load_spec,
    save_spec,
)
from .whitebalance import (
    BlockPartition,
    LocatedWhitePoint,
    WhitePointEstimator,
    estimate_white_point,
    locate_white_points,
    n_white_balance,
    partition_blocks,
    single_wb,
)

__version__ = "0.1.0"

__all__ = [
    "D50",
    "D65",
    "WHITE_POINTS",
    "adaptation_matrix",
    "cosine_similarity",
    "rgb_to_xyz",
    "srgb_decode",
    "srgb_encode",
    "xyz_to_rgb",
    "WbMatchError",
    "DegenerateWhitePointError",
    "DegenerateRegionError",
    "InvalidPartitionError",
    "DimensionError",
    "EmptyTableError",
    "InvalidSpecError",
    "ImageFormatError",
    "Rect",
    "EvalRecord",
    "iou",
    "make_record",
    "evaluate_batch",
    "mean_iou_csv",
    "MatchOutcome",
    "ncc_score",
    "match_template",
    "match_accelerated",
    "RunConfig",
    "adjust_query",
    "adjust_template",
    "run_match",
    "SceneSpec",
    "SceneBundle",
    "Illuminant",
    "generate_scene",
    "illumination_field",
    "load_spec",
    "save_spec",
    "WhitePointEstimator",
    "LocatedWhitePoint",
    "BlockPartition",
    "estimate_white_point",
    "partition_blocks",
    "locate_white_points",
    "single_wb",
    "n_white_balance",
    "__version__",
]
