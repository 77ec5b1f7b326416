"""Raster file I/O: binary PPM (P6, maxval 255), optionally PNG via Pillow.

The PPM writer emits the canonical header "P6\\n<w> <h>\\n255\\n" so that a
load/save round trip of a canonical file is byte identical.
"""
from __future__ import annotations

import os
from pathlib import Path

import numpy as np

from .errors import MalformedFile, UnsupportedFormat

_WHITESPACE = b" \t\n\r\x0b\x0c"


def _next_token(data: bytes, pos: int) -> tuple[bytes, int]:
    """Scan one header token, skipping whitespace and '#' comments."""
    n = len(data)
    while pos < n:
        ch = data[pos : pos + 1]
        if ch == b"#":
            while pos < n and data[pos : pos + 1] != b"\n":
                pos += 1
        elif ch in _WHITESPACE:
            pos += 1
        else:
            break
    if pos >= n:
        raise MalformedFile("unexpected end of header", offset=pos)
    start = pos
    while pos < n and data[pos : pos + 1] not in _WHITESPACE and data[pos : pos + 1] != b"#":
        pos += 1
    return data[start:pos], pos


def read_ppm(path: str | os.PathLike) -> np.ndarray:
    """Read a binary PPM into a (height, width, 3) uint8 array."""
    data = Path(path).read_bytes()
    if data[:2] != b"P6":
        raise UnsupportedFormat(f"{path}: not a binary PPM (magic {data[:2]!r})")
    pos = 2
    fields = []
    for _ in range(3):
        token, pos = _next_token(data, pos)
        try:
            fields.append(int(token))
        except ValueError:
            raise MalformedFile(f"non-numeric header token {token!r}", offset=pos) from None
    width, height, maxval = fields
    if width <= 0 or height <= 0:
        raise MalformedFile(f"non-positive dimensions {width}x{height}", offset=pos)
    if maxval != 255:
        raise UnsupportedFormat(f"{path}: only maxval 255 supported, got {maxval}")
    if pos >= len(data) or data[pos : pos + 1] not in _WHITESPACE:
        raise MalformedFile("missing whitespace after maxval", offset=pos)
    pos += 1
    expected = width * height * 3
    payload = data[pos:]
    if len(payload) < expected:
        raise MalformedFile(
            f"truncated pixel data, need {expected} bytes, have {len(payload)}",
            offset=pos + len(payload),
        )
    if len(payload) > expected:
        raise MalformedFile(f"{len(payload) - expected} trailing bytes", offset=pos + expected)
    return np.frombuffer(payload, dtype=np.uint8).reshape(height, width, 3).copy()


def write_ppm(path: str | os.PathLike, pixels: np.ndarray) -> None:
    """Write a (height, width, 3) uint8 array as canonical binary PPM."""
    if pixels.ndim != 3 or pixels.shape[2] != 3 or pixels.dtype != np.uint8:
        raise ValueError("pixels must be a (height, width, 3) uint8 array")
    height, width = pixels.shape[:2]
    header = f"P6\n{width} {height}\n255\n".encode("ascii")
    Path(path).write_bytes(header + np.ascontiguousarray(pixels).tobytes())


def read_image(path: str | os.PathLike) -> np.ndarray:
    """Dispatch on extension: .ppm native, .png via Pillow when installed."""
    suffix = Path(path).suffix.lower()
    if suffix == ".ppm":
        return read_ppm(path)
    if suffix == ".png":
        image = _pillow().open(path).convert("RGB")
        return np.asarray(image, dtype=np.uint8)
    raise UnsupportedFormat(f"{path}: unsupported extension {suffix!r}")


def write_image(path: str | os.PathLike, pixels: np.ndarray) -> None:
    suffix = Path(path).suffix.lower()
    if suffix == ".ppm":
        write_ppm(path, pixels)
        return
    if suffix == ".png":
        _pillow().fromarray(pixels, mode="RGB").save(path, format="PNG")
        return
    raise UnsupportedFormat(f"{path}: unsupported extension {suffix!r}")


def _pillow():
    try:
        from PIL import Image
    except ImportError as exc:
        raise UnsupportedFormat("PNG support requires the 'pillow' extra") from exc
    return Image
