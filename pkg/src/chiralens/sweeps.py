"""Chirality sweeps, focal sign-flip thresholds, and deterministic CSV output."""
from __future__ import annotations

import enum
import math
import os
from dataclasses import dataclass, replace

from .errors import InfiniteFocus, NonPhysical, NoThreshold
from .matrix_optics import ThickLensSpec, focal_length
from .media import ChannelSpec, PolarizationMode, channel_offset

#: final bisection bracket width on kappa
BRACKET_WIDTH = 1e-9

#: default upper end of the threshold search range
KAPPA_MAX = 5.0

_SCAN_STEPS = 1024


class SweepParameter(str, enum.Enum):
    KAPPA = "kappa"
    WAVELENGTH = "wavelength"
    SCREEN_DISTANCE = "screen_distance"


class ThresholdKind(str, enum.Enum):
    INDEX_MATCH_POLE = "index_match_pole"
    BRACKET_ZERO = "bracket_zero"


@dataclass(frozen=True)
class SweepSpec:
    """A grid sweep over one parameter for a set of channels and modes."""

    parameter: SweepParameter
    grid: tuple[float, ...]
    channels: tuple[ChannelSpec, ...]
    modes: tuple[PolarizationMode, ...]
    lens: ThickLensSpec

    def __post_init__(self):
        if len(self.grid) < 1:
            raise ValueError("sweep grid must be non-empty")
        if any(b <= a for a, b in zip(self.grid, self.grid[1:])):
            raise ValueError("sweep grid must be strictly ascending")
        if not self.channels or not self.modes:
            raise ValueError("sweep needs at least one channel and one mode")


@dataclass(frozen=True)
class SweepRow:
    kappa: float
    channel: str
    mode: PolarizationMode
    focal_length: float | None
    status: str  # ok | pole | nonphysical


@dataclass(frozen=True)
class ThresholdResult:
    channel: str
    mode: PolarizationMode
    kappa_star: float
    kind: ThresholdKind
    bracket: tuple[float, float]


def focal_sweep(spec: SweepSpec) -> list[SweepRow]:
    """Focal length per (grid kappa, channel, mode), grid major.

    Pole rows are marked instead of carrying a huge number; rows where the
    mode's phase index goes non-positive are marked nonphysical and the sweep
    continues.
    """
    if spec.parameter is not SweepParameter.KAPPA:
        raise ValueError(f"focal_sweep supports the kappa parameter, got {spec.parameter.value}")
    rows = []
    for kappa in spec.grid:
        lens = replace(spec.lens, lens_medium=replace(spec.lens.lens_medium, kappa=kappa))
        for channel in spec.channels:
            offset = channel_offset(channel, lens.lens_medium.dispersion)
            for mode in spec.modes:
                try:
                    f = focal_length(lens, offset, mode)
                except InfiniteFocus:
                    rows.append(SweepRow(kappa, channel.name, mode, None, "pole"))
                except NonPhysical:
                    rows.append(SweepRow(kappa, channel.name, mode, None, "nonphysical"))
                else:
                    rows.append(SweepRow(kappa, channel.name, mode, f, "ok"))
    return rows


def _bisect(fn, lo: float, hi: float, width: float) -> tuple[float, float]:
    f_lo = fn(lo)
    while hi - lo > width:
        mid = 0.5 * (lo + hi)
        f_mid = fn(mid)
        if f_mid == 0.0:
            half = 0.25 * width
            return mid - half, mid + half
        if (f_mid < 0.0) == (f_lo < 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return lo, hi


def find_threshold(
    lens: ThickLensSpec,
    channel: ChannelSpec,
    mode: PolarizationMode = PolarizationMode.LCP,
    kappa_max: float = KAPPA_MAX,
    bracket_width: float = BRACKET_WIDTH,
) -> ThresholdResult:
    """Locate the left-circular focal sign flip in kappa for one channel.

    Two mechanisms can flip the focal sign: the index-match pole, where the
    lens index meets the background and the lens turns afocal, and a zero of
    the thickness bracket in the focal expression. Both candidates are
    bisected to the requested bracket width and the smaller kappa wins.
    """
    if mode is not PolarizationMode.LCP:
        raise ValueError("thresholds are defined for the LCP mode")
    offset = channel_offset(channel, lens.lens_medium.dispersion)
    root = math.sqrt(lens.lens_medium.dispersion.relative_permittivity(offset))
    n1 = lens.background.n_p1
    if root - n1 <= 0.0:
        raise NoThreshold(
            f"channel {channel.name}: LCP index at kappa=0 does not exceed the background"
        )
    # the LCP index must stay positive, so only kappa < sqrt(eps) is searchable
    hi_limit = min(kappa_max, root * (1.0 - 1e-12))

    def index_match(kappa: float) -> float:
        return (root - kappa) - n1

    def bracket_term(kappa: float) -> float:
        n2 = root - kappa
        return (1.0 / lens.r1 - 1.0 / lens.r2) + (lens.thickness / n2) * (
            (n2 - n1) / (lens.r1 * lens.r2)
        )

    candidates = []
    if index_match(0.0) > 0.0 > index_match(hi_limit):
        lo, hi = _bisect(index_match, 0.0, hi_limit, bracket_width)
        candidates.append((0.5 * (lo + hi), ThresholdKind.INDEX_MATCH_POLE, (lo, hi)))

    # scan for the first sign change of the bracket term
    prev_k, prev_v = 0.0, bracket_term(0.0)
    for step in range(1, _SCAN_STEPS + 1):
        k = hi_limit * step / _SCAN_STEPS
        v = bracket_term(k)
        if prev_v == 0.0 or (v < 0.0) != (prev_v < 0.0):
            lo, hi = _bisect(bracket_term, prev_k, k, bracket_width)
            candidates.append((0.5 * (lo + hi), ThresholdKind.BRACKET_ZERO, (lo, hi)))
            break
        prev_k, prev_v = k, v

    if not candidates:
        raise NoThreshold(
            f"channel {channel.name}: no focal sign change for kappa in [0, {kappa_max:g}]"
        )
    kappa_star, kind, bracket = min(candidates, key=lambda c: c[0])
    return ThresholdResult(channel.name, mode, kappa_star, kind, bracket)


def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    if isinstance(value, enum.Enum):
        return str(value.name) if isinstance(value, PolarizationMode) else str(value.value)
    return str(value)


def emit_csv(header, rows, path: str | os.PathLike, trailing_comments=()) -> None:
    """Write a deterministic CSV: header row, 17 significant digits, LF endings."""
    if not rows:
        raise ValueError("refusing to write an empty table")
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_format_cell(cell) for cell in row))
    lines.extend(trailing_comments)
    data = "\n".join(lines) + "\n"
    with open(path, "w", encoding="ascii", newline="\n") as handle:
        handle.write(data)


def sweep_rows_as_cells(rows: list[SweepRow]) -> list[tuple]:
    """Flatten sweep rows for emit_csv; poles become the literal inf_pole token."""
    cells = []
    for row in rows:
        if row.status == "pole":
            focal = "inf_pole"
        elif row.focal_length is None:
            focal = None
        else:
            focal = row.focal_length
        cells.append((row.kappa, row.channel, row.mode, focal, row.status))
    return cells
