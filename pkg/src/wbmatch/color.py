"""Color math substrate: sRGB transfer functions, RGB/XYZ conversion,
cosine similarity, and Bradford chromatic adaptation.

All image arithmetic in this package happens on linear-light values; the
sRGB gamma curve is applied only when decoding from or encoding to 8-bit
storage.
"""

from __future__ import annotations

import numpy as np

from .errors import DegenerateWhitePointError

# Linear sRGB -> XYZ for the D65 white point, 2-degree observer
# (brucelindbloom.com / IEC 61966-2-1 primaries).
SRGB_TO_XYZ = np.array([
    [0.4124564, 0.3575761, 0.1804375],
    [0.2126729, 0.7151522, 0.0721750],
    [0.0193339, 0.1191920, 0.9503041],
])

# Inverse computed once at import. The published 7-digit inverse would only
# round-trip to ~1e-7; the computed inverse round-trips to machine precision,
# which the adaptation pipeline relies on.
XYZ_TO_SRGB = np.linalg.inv(SRGB_TO_XYZ)

# Bradford cone response matrix (published values).
BRADFORD = np.array([
    [0.8951000, 0.2664000, -0.1614000],
    [-0.7502000, 1.7135000, 0.0367000],
    [0.0389000, -0.0685000, 1.0296000],
])

BRADFORD_INV = np.linalg.inv(BRADFORD)

D65 = np.array([0.95047, 1.00000, 1.08883])
D50 = np.array([0.96422, 1.00000, 0.82521])

WHITE_POINTS = {"d65": D65, "d50": D50}


def srgb_decode(codes) -> np.ndarray:
    """Map 8-bit sRGB channel codes (0..255) to linear-light values.

    Accepts any array shape; applies the IEC 61966-2-1 electro-optical
    transfer function elementwise. decode(0) = 0 and decode(255) = 1.
    """
    arr = np.asarray(codes, dtype=np.float64) / 255.0
    return np.where(arr <= 0.04045, arr / 12.92, ((arr + 0.055) / 1.055) ** 2.4)


def srgb_encode(linear) -> np.ndarray:
    """Map linear-light values to 8-bit sRGB codes.

    Values are clamped to [0, 1], companded with the inverse transfer
    function, and rounded half-up, so encode(decode(v)) == v for every
    8-bit code v.
    """
    arr = np.clip(np.asarray(linear, dtype=np.float64), 0.0, 1.0)
    enc = np.where(arr <= 0.0031308, arr * 12.92, 1.055 * arr ** (1.0 / 2.4) - 0.055)
    return np.floor(enc * 255.0 + 0.5).astype(np.uint8)


def rgb_to_xyz(rgb) -> np.ndarray:
    """Convert linear RGB to CIE XYZ (sRGB primaries, D65 white)."""
    return np.einsum("ij,...j->...i", SRGB_TO_XYZ, np.asarray(rgb, dtype=np.float64))


def xyz_to_rgb(xyz) -> np.ndarray:
    """Convert CIE XYZ back to linear RGB."""
    return np.einsum("ij,...j->...i", XYZ_TO_SRGB, np.asarray(xyz, dtype=np.float64))


def cosine_similarity(a, b):
    """Cosine of the angle between two 3-vectors (broadcasts over leading axes).

    If either vector has zero norm the similarity is defined as 0, so black
    pixels never win a closest-pixel search.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    num = np.sum(a * b, axis=-1)
    denom = np.linalg.norm(a, axis=-1) * np.linalg.norm(b, axis=-1)
    out = np.divide(num, denom, out=np.zeros_like(num, dtype=np.float64),
                    where=denom > 0)
    return float(out) if out.ndim == 0 else out


def adaptation_matrix(source, target) -> np.ndarray:
    """Bradford chromatic adaptation matrix mapping XYZ under ``source``
    to XYZ under ``target``.

    The matrix M satisfies M @ source == target to machine precision and
    adaptation_matrix(w, w) is the identity.

    Raises:
        DegenerateWhitePointError: if either white point has a non-positive
            or non-finite component, or a non-positive cone response.
    """
    src = np.asarray(source, dtype=np.float64).reshape(3)
    dst = np.asarray(target, dtype=np.float64).reshape(3)
    for name, wp in (("source", src), ("target", dst)):
        if not np.all(np.isfinite(wp)) or np.any(wp <= 0):
            raise DegenerateWhitePointError(
                f"{name} white point must have positive finite components, got {wp}")
    cone_src = BRADFORD @ src
    cone_dst = BRADFORD @ dst
    if np.any(cone_src <= 0) or np.any(cone_dst <= 0):
        raise DegenerateWhitePointError(
            "white point falls outside the Bradford cone response gamut")
    return BRADFORD_INV @ (np.diag(cone_dst / cone_src) @ BRADFORD)
