"""Image file I/O (8-bit sRGB PNG and binary PPM) and rectangle annotation.

Files store gamma-encoded 8-bit values; everything in memory is linear
float. PPM is the bit-exact interchange format: a P6 file with maxval 255
round-trips unchanged.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from .color import srgb_decode, srgb_encode
from .errors import ImageFormatError
from .evaluation import Rect

YELLOW = np.array([255, 255, 0], dtype=np.uint8)
GREEN = np.array([0, 255, 0], dtype=np.uint8)


def read_image(path) -> np.ndarray:
    """Read a PNG or PPM file into a linear HxWx3 float array."""
    path = Path(path)
    suffix = path.suffix.lower()
    if suffix == ".png":
        try:
            with Image.open(path) as img:
                codes = np.asarray(img.convert("RGB"), dtype=np.uint8)
        except (UnidentifiedImageError, OSError) as exc:
            raise ImageFormatError(f"cannot read PNG {path}: {exc}") from exc
    elif suffix in (".ppm", ".pnm"):
        codes = read_ppm(path)
    else:
        raise ImageFormatError(f"unsupported image format {suffix!r} for {path}")
    return srgb_decode(codes)


def write_image(path, linear: np.ndarray) -> None:
    """Encode a linear image to 8-bit sRGB and write PNG or PPM by extension."""
    path = Path(path)
    codes = srgb_encode(linear)
    write_codes(path, codes)


def write_codes(path, codes: np.ndarray) -> None:
    """Write an already-encoded uint8 HxWx3 array to PNG or PPM."""
    path = Path(path)
    suffix = path.suffix.lower()
    if suffix == ".png":
        Image.fromarray(codes, mode="RGB").save(path, format="PNG")
    elif suffix in (".ppm", ".pnm"):
        write_ppm(path, codes)
    else:
        raise ImageFormatError(f"unsupported image format {suffix!r} for {path}")


def read_ppm(path) -> np.ndarray:
    """Parse a binary (P6) PPM file with maxval 255."""
    data = Path(path).read_bytes()
    fields: list[bytes] = []
    pos = 0
    while len(fields) < 4:
        while pos < len(data) and data[pos:pos + 1].isspace():
            pos += 1
        if pos < len(data) and data[pos:pos + 1] == b"#":
            while pos < len(data) and data[pos] != 0x0A:
                pos += 1
            continue
        start = pos
        while pos < len(data) and not data[pos:pos + 1].isspace():
            pos += 1
        if start == pos:
            raise ImageFormatError(f"truncated PPM header in {path}")
        fields.append(data[start:pos])
    if fields[0] != b"P6":
        raise ImageFormatError(f"{path} is not a binary P6 PPM")
    try:
        width, height, maxval = int(fields[1]), int(fields[2]), int(fields[3])
    except ValueError as exc:
        raise ImageFormatError(f"bad PPM header in {path}") from exc
    if maxval != 255:
        raise ImageFormatError(f"only maxval 255 PPMs are supported, got {maxval}")
    pos += 1  # single whitespace byte after maxval
    raster = data[pos:pos + width * height * 3]
    if len(raster) != width * height * 3:
        raise ImageFormatError(f"truncated PPM raster in {path}")
    return np.frombuffer(raster, dtype=np.uint8).reshape(height, width, 3)


def write_ppm(path, codes: np.ndarray) -> None:
    """Write a uint8 HxWx3 array as a binary P6 PPM."""
    codes = np.ascontiguousarray(codes, dtype=np.uint8)
    height, width = codes.shape[:2]
    header = f"P6\n{width} {height}\n255\n".encode("ascii")
    Path(path).write_bytes(header + codes.tobytes())


def draw_rect_border(codes: np.ndarray, rect: Rect, color: np.ndarray,
                     thickness: int = 3) -> None:
    """Draw a border band just inside a rectangle's edges, in place.

    Pixels outside the band are untouched; the band is clipped to the
    frame.
    """
    height, width = codes.shape[:2]
    x0 = max(rect.x, 0)
    y0 = max(rect.y, 0)
    x1 = min(rect.right, width)
    y1 = min(rect.bottom, height)
    if x0 >= x1 or y0 >= y1:
        return
    t = min(thickness, x1 - x0, y1 - y0)
    codes[y0:y0 + t, x0:x1] = color
    codes[y1 - t:y1, x0:x1] = color
    codes[y0:y1, x0:x0 + t] = color
    codes[y0:y1, x1 - t:x1] = color
