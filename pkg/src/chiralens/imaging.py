"""Geometric rendering of the two polarization-mode images at a screen plane.

Each color channel is propagated through the lens with its own system matrix.
An object point at height x lands centered at (A_s - B_s*n1/d_o) * x (the
chief ray through the aperture center), and the circular aperture spreads it
into a uniform disc of radius |B_s| * n1 * a / d_o, which vanishes exactly at
the channel's conjugate plane. Rendering therefore scales each channel plane
by its signed chief-ray factor (negative = 180 degree rotation) and convolves
it with the normalized disc kernel, rasterized by exact area coverage.

The output canvas keeps the input pixel dimensions with the pitch rescaled by
the largest channel magnitude, so all three scaled channels fit and their
relative sizes survive.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.signal import fftconvolve

from . import raster
from .errors import DegenerateScale
from .matrix_optics import (
    Composition,
    ThickLensSpec,
    solve_image,
    system_matrix,
    validate_for_imaging,
)
from .media import ChannelSpec, PolarizationMode, channel_offset
from .errors import ImageAtInfinity

#: |B_sys| below this many output pixels renders as a sharp (unblurred) plane
_BLUR_PIXEL_FLOOR = 1e-9

#: transverse scales smaller than this cannot be rasterized meaningfully
_SCALE_FLOOR = 1e-9

_HALF_DIAGONAL = math.sqrt(0.5)


@dataclass(frozen=True)
class Transparency:
    """Input object: three channel planes with a physical pixel pitch.

    `channels` has shape (3, height, width) with float values in [0, 1],
    plane order R, G, B matching `channel_specs`.
    """

    channels: np.ndarray
    pitch: float
    channel_specs: tuple[ChannelSpec, ChannelSpec, ChannelSpec]

    def __post_init__(self):
        if self.pitch <= 0.0:
            raise ValueError("pixel pitch must be positive")
        if self.channels.ndim != 3 or self.channels.shape[0] != 3:
            raise ValueError("channels must have shape (3, height, width)")
        if self.channels.size == 0:
            raise ValueError("channels must be non-empty")
        if float(self.channels.min()) < 0.0 or float(self.channels.max()) > 1.0:
            raise ValueError("channel values must lie in [0, 1]")
        if tuple(spec.name for spec in self.channel_specs) != ("R", "G", "B"):
            raise ValueError("channel_specs must be (R, G, B) in plane order")

    @property
    def height(self) -> int:
        return self.channels.shape[1]

    @property
    def width(self) -> int:
        return self.channels.shape[2]


@dataclass(frozen=True)
class ChannelReport:
    channel: str
    mode: PolarizationMode
    image_distance: float
    magnification: float
    blur_radius: float
    is_real: bool


@dataclass(frozen=True)
class ScreenImage:
    """Rendered output for one polarization mode at a screen plane."""

    mode: PolarizationMode
    screen_distance: float
    channels: np.ndarray
    pitch: float
    per_channel_report: tuple[ChannelReport, ChannelReport, ChannelReport]

    @property
    def height(self) -> int:
        return self.channels.shape[1]

    @property
    def width(self) -> int:
        return self.channels.shape[2]


@dataclass(frozen=True)
class ConjugateRow:
    channel: str
    mode: PolarizationMode
    image_distance: float | None
    magnification: float | None
    is_real: bool | None
    status: str


def _circle_halfwidth_integral(y: float, r: float) -> float:
    """Antiderivative of sqrt(r^2 - y^2), clamped to the disc extent."""
    y = min(max(y, -r), r)
    return 0.5 * (y * math.sqrt(max(r * r - y * y, 0.0)) + r * r * math.asin(y / r))


def _disc_rect_area(x0: float, x1: float, y0: float, y1: float, r: float) -> float:
    """Exact intersection area of an axis-aligned rectangle with a disc at the origin."""
    lo, hi = max(y0, -r), min(y1, r)
    if lo >= hi or x0 >= x1:
        return 0.0
    cuts = {lo, hi}
    for edge in (x0, x1):
        if -r <= edge <= r:
            yc = math.sqrt(max(r * r - edge * edge, 0.0))
            for y in (-yc, yc):
                if lo < y < hi:
                    cuts.add(y)
    ys = sorted(cuts)
    area = 0.0
    for a, b in zip(ys, ys[1:]):
        mid = 0.5 * (a + b)
        w = math.sqrt(max(r * r - mid * mid, 0.0))
        left, right = max(x0, -w), min(x1, w)
        if right <= left:
            continue
        arc = _circle_halfwidth_integral(b, r) - _circle_halfwidth_integral(a, r)
        area += x1 * (b - a) if x1 <= w else arc
        area -= x0 * (b - a) if x0 >= -w else -arc
    return area


def disc_kernel(radius_px: float) -> np.ndarray:
    """Normalized uniform-disc kernel, pixel weights by exact area coverage."""
    if radius_px <= 0.0:
        raise ValueError("kernel radius must be positive")
    half = int(math.ceil(radius_px + 0.5))
    size = 2 * half + 1
    kernel = np.zeros((size, size))
    coords = np.arange(-half, half + 1, dtype=float)
    dist = np.hypot(coords[:, None], coords[None, :])
    kernel[dist + _HALF_DIAGONAL <= radius_px] = 1.0
    rim = np.argwhere(
        (dist + _HALF_DIAGONAL > radius_px) & (dist - _HALF_DIAGONAL < radius_px)
    )
    for i, j in rim:
        y, x = coords[i], coords[j]
        kernel[i, j] = _disc_rect_area(x - 0.5, x + 0.5, y - 0.5, y + 0.5, radius_px)
    return kernel / kernel.sum()


def _resample_plane(plane: np.ndarray, inv_factor: float) -> np.ndarray:
    """Bilinear resample about the plane center; output keeps the input shape.

    `inv_factor` maps output pixel offsets to source pixel offsets; a negative
    value flips both axes, which is the 180 degree rotation of a negative
    magnification. Samples outside the source read zero.
    """
    h, w = plane.shape
    padded = np.zeros((h + 2, w + 2), dtype=np.float64)
    padded[1:-1, 1:-1] = plane

    def axis(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        center = (n - 1) / 2.0
        src = (np.arange(n, dtype=np.float64) - center) * inv_factor + center
        base = np.floor(src)
        frac = src - base
        idx = base.astype(np.int64)
        lo = np.clip(idx + 1, 0, n + 1)
        hi = np.clip(idx + 2, 0, n + 1)
        return lo, hi, frac

    y0, y1, fy = axis(h)
    x0, x1, fx = axis(w)
    top = (1.0 - fx) * padded[np.ix_(y0, x0)] + fx * padded[np.ix_(y0, x1)]
    bottom = (1.0 - fx) * padded[np.ix_(y1, x0)] + fx * padded[np.ix_(y1, x1)]
    return (1.0 - fy)[:, None] * top + fy[:, None] * bottom


def _render_channel(plane: np.ndarray, scale: float, pitch_scale: float, blur_px: float) -> np.ndarray:
    out = _resample_plane(plane, pitch_scale / scale)
    if blur_px > _BLUR_PIXEL_FLOOR:
        out = fftconvolve(out, disc_kernel(blur_px), mode="same")
    return np.clip(out, 0.0, 1.0)


def render_at_screen(
    obj: Transparency,
    lens: ThickLensSpec,
    object_distance: float,
    screen_distance: float,
    mode: PolarizationMode,
    composition: Composition = Composition.PAPER,
    workers: int = 1,
) -> ScreenImage:
    """Render one mode's image of the transparency at a screen behind the lens."""
    if object_distance <= 0.0:
        raise ValueError("object distance must be positive")
    if screen_distance <= 0.0:
        raise ValueError("screen distance must be positive")
    validate_for_imaging(lens)
    n1 = lens.background.n_p1
    aperture = lens.aperture_radius

    scales, blur_radii, reports = [], [], []
    for spec in obj.channel_specs:
        offset = channel_offset(spec, lens.lens_medium.dispersion)
        m = system_matrix(lens, offset, mode, object_distance, screen_distance, composition)
        scale = m.a - m.b * n1 / object_distance
        if abs(scale) < _SCALE_FLOOR:
            raise DegenerateScale(f"channel {spec.name}: |scale| = {abs(scale):g} < {_SCALE_FLOOR:g}")
        blur = abs(m.b) * n1 * aperture / object_distance
        solution = solve_image(lens, offset, mode, object_distance, composition)
        scales.append(scale)
        blur_radii.append(blur)
        reports.append(
            ChannelReport(
                channel=spec.name,
                mode=mode,
                image_distance=solution.image_distance,
                magnification=solution.magnification,
                blur_radius=blur,
                is_real=solution.is_real,
            )
        )

    pitch_scale = max(abs(s) for s in scales)
    pitch_out = obj.pitch * pitch_scale

    def render(idx: int) -> np.ndarray:
        return _render_channel(
            obj.channels[idx], scales[idx], pitch_scale, blur_radii[idx] / pitch_out
        )

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            planes = list(pool.map(render, range(3)))
    else:
        planes = [render(idx) for idx in range(3)]

    return ScreenImage(
        mode=mode,
        screen_distance=screen_distance,
        channels=np.stack(planes),
        pitch=pitch_out,
        per_channel_report=tuple(reports),
    )


def conjugate_planes(
    obj: Transparency,
    lens: ThickLensSpec,
    object_distance: float,
    composition: Composition = Composition.PAPER,
) -> list[ConjugateRow]:
    """Conjugate solutions for all channels and both modes, channel major."""
    if object_distance <= 0.0:
        raise ValueError("object distance must be positive")
    validate_for_imaging(lens)
    rows = []
    for spec in obj.channel_specs:
        offset = channel_offset(spec, lens.lens_medium.dispersion)
        for mode in (PolarizationMode.LCP, PolarizationMode.RCP):
            try:
                solution = solve_image(lens, offset, mode, object_distance, composition)
            except ImageAtInfinity:
                rows.append(ConjugateRow(spec.name, mode, None, None, None, "at_infinity"))
                continue
            rows.append(
                ConjugateRow(
                    channel=spec.name,
                    mode=mode,
                    image_distance=solution.image_distance,
                    magnification=solution.magnification,
                    is_real=solution.is_real,
                    status="ok",
                )
            )
    return rows


def load_transparency(
    path: str | os.PathLike,
    pitch: float,
    channel_specs: tuple[ChannelSpec, ChannelSpec, ChannelSpec],
) -> Transparency:
    pixels = raster.read_image(path)
    channels = pixels.astype(np.float64).transpose(2, 0, 1) / 255.0
    return Transparency(channels=channels, pitch=pitch, channel_specs=tuple(channel_specs))


def quantize(channels: np.ndarray) -> np.ndarray:
    """Float planes (3, H, W) in [0, 1] to interleaved (H, W, 3) uint8."""
    scaled = np.rint(np.clip(channels, 0.0, 1.0) * 255.0)
    return scaled.astype(np.uint8).transpose(1, 2, 0)


def save_screen_image(image: ScreenImage, path: str | os.PathLike) -> None:
    raster.write_image(path, quantize(image.channels))
