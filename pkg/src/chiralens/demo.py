"""Procedural demo transparency: three colored discs on a gray background."""
from __future__ import annotations

import argparse

import numpy as np

from . import raster
from .defaults import DEFAULT_OBJECT_PITCH, default_channels
from .imaging import Transparency, quantize

_DISC_COLORS = ((0.95, 0.15, 0.15), (0.15, 0.95, 0.15), (0.15, 0.25, 0.95))
_BACKGROUND = 0.5


def demo_transparency(
    width: int = 160, height: int = 160, pitch: float = DEFAULT_OBJECT_PITCH
) -> Transparency:
    channels = np.full((3, height, width), _BACKGROUND)
    rows = np.arange(height)[:, None]
    cols = np.arange(width)[None, :]
    radius = min(width, height) / 6.0
    centers = (
        (height * 0.32, width * 0.30),
        (height * 0.32, width * 0.70),
        (height * 0.72, width * 0.50),
    )
    for (cy, cx), color in zip(centers, _DISC_COLORS):
        mask = (rows - cy) ** 2 + (cols - cx) ** 2 <= radius**2
        for plane, value in zip(channels, color):
            plane[mask] = value
    return Transparency(channels=channels, pitch=pitch, channel_specs=default_channels())


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description="write the demo transparency")
    parser.add_argument("path", help="output raster path (.ppm or .png)")
    parser.add_argument("--size", type=int, default=160, help="square size in pixels")
    args = parser.parse_args(argv)
    raster.write_image(args.path, quantize(demo_transparency(args.size, args.size).channels))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
