"""Run configuration: JSON container, validation, and object construction.

Key names and SI-suffix units are normative; the file layout mirrors
`defaults.default_config_dict`. Relative paths resolve against the directory
containing the config file. The screen is either an explicit
{"distance_m": ...} or the symbolic form "conjugate:<channel>:<mode>".
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path

from .errors import ConfigError, ImageAtInfinity
from .matrix_optics import Composition, ThickLensSpec, solve_image
from .media import (
    BackgroundMedium,
    ChannelSpec,
    ChiralMedium,
    DispersionModel,
    PolarizationMode,
    channel_offset,
)
from . import defaults

_SCREEN_PATTERN = re.compile(r"^conjugate:([RGB]):(LCP|RCP)$")


@dataclass(frozen=True)
class RunConfig:
    lens: ThickLensSpec
    channels: tuple[ChannelSpec, ChannelSpec, ChannelSpec]
    object_path: Path
    object_pitch: float
    object_distance: float
    screen: float | str
    composition: Composition
    output_dir: Path


def _require(mapping: dict, key: str, context: str):
    if key not in mapping:
        raise ConfigError(f"missing key {context}{key}")
    return mapping[key]


def _number(mapping: dict, key: str, context: str) -> float:
    value = _require(mapping, key, context)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{context}{key} must be a number")
    return float(value)


def _positive(mapping: dict, key: str, context: str) -> float:
    value = _number(mapping, key, context)
    if value <= 0.0:
        raise ConfigError(f"{context}{key} must be positive")
    return value


def parse_config(data: dict, base_dir: Path) -> RunConfig:
    if not isinstance(data, dict):
        raise ConfigError("config root must be an object")

    lens_map = _require(data, "lens", "")
    medium_map = _require(data, "medium", "")

    r1 = _number(lens_map, "r1_m", "lens.")
    r2 = _number(lens_map, "r2_m", "lens.")
    if r1 == 0.0:
        raise ConfigError("lens.r1_m must be nonzero")
    if r2 == 0.0:
        raise ConfigError("lens.r2_m must be nonzero")
    thickness = _positive(lens_map, "thickness_m", "lens.")
    aperture = _positive(lens_map, "aperture_m", "lens.")

    eps_r_ref = _positive(medium_map, "eps_r_ref", "medium.")
    eps_r_slope = _number(medium_map, "eps_r_slope", "medium.")
    omega_ref = _positive(medium_map, "omega_ref_rad_s", "medium.")
    kappa = _number(medium_map, "kappa", "medium.")
    if kappa < 0.0:
        raise ConfigError("medium.kappa must be >= 0")
    band_lo = float(medium_map.get("band_lo_rad_s", -defaults.BAND_HALF_WIDTH))
    band_hi = float(medium_map.get("band_hi_rad_s", defaults.BAND_HALF_WIDTH))

    background_index = _number(data, "background_index", "")
    if background_index < 1.0:
        raise ConfigError("background_index must be >= 1")

    try:
        dispersion = DispersionModel(
            eps_r_ref=eps_r_ref,
            eps_r_slope=eps_r_slope,
            omega_ref=omega_ref,
            band_lo=band_lo,
            band_hi=band_hi,
        )
    except Exception as exc:
        raise ConfigError(f"medium: {exc}") from exc
    medium = ChiralMedium(dispersion=dispersion, kappa=kappa)

    channels_raw = _require(data, "channels", "")
    if not isinstance(channels_raw, list) or len(channels_raw) != 3:
        raise ConfigError("channels must list exactly three name/wavelength pairs")
    channels = []
    for i, entry in enumerate(channels_raw):
        context = f"channels[{i}]."
        name = _require(entry, "name", context)
        wavelength = _positive(entry, "wavelength_m", context)
        try:
            spec = ChannelSpec(name, wavelength)
        except ValueError as exc:
            raise ConfigError(f"channels[{i}]: {exc}") from exc
        try:
            channel_offset(spec, dispersion)
        except Exception as exc:
            raise ConfigError(f"channels[{i}].wavelength_m: {exc}") from exc
        channels.append(spec)
    if tuple(spec.name for spec in channels) != ("R", "G", "B"):
        raise ConfigError("channels must be named R, G, B in order")

    try:
        lens = ThickLensSpec(
            r1=r1,
            r2=r2,
            thickness=thickness,
            lens_medium=medium,
            background=BackgroundMedium(background_index),
            aperture_radius=aperture,
        )
    except ValueError as exc:
        raise ConfigError(f"lens: {exc}") from exc

    object_map = _require(data, "object", "")
    object_path = Path(str(_require(object_map, "path", "object.")))
    if not object_path.is_absolute():
        object_path = base_dir / object_path
    object_pitch = _positive(object_map, "pitch_m", "object.")
    object_distance = _positive(object_map, "distance_m", "object.")

    screen_raw = _require(data, "screen", "")
    screen: float | str
    if isinstance(screen_raw, str):
        if not _SCREEN_PATTERN.match(screen_raw):
            raise ConfigError(
                "screen must be {\"distance_m\": <m>} or \"conjugate:<R|G|B>:<LCP|RCP>\""
            )
        screen = screen_raw
    elif isinstance(screen_raw, dict):
        screen = _positive(screen_raw, "distance_m", "screen.")
    else:
        raise ConfigError("screen must be an object with distance_m or a conjugate reference")

    composition_raw = data.get("composition", "paper")
    try:
        composition = Composition(composition_raw)
    except ValueError:
        raise ConfigError("composition must be 'paper' or 'standard'") from None

    output_dir = Path(str(data.get("output_dir", "out")))
    if not output_dir.is_absolute():
        output_dir = base_dir / output_dir

    return RunConfig(
        lens=lens,
        channels=tuple(channels),
        object_path=object_path,
        object_pitch=object_pitch,
        object_distance=object_distance,
        screen=screen,
        composition=composition,
        output_dir=output_dir,
    )


def load_config(path: str | Path) -> RunConfig:
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from exc
    return parse_config(data, path.resolve().parent)


def resolve_screen(config: RunConfig) -> float:
    """Resolve the screen distance, following a conjugate reference if given."""
    if isinstance(config.screen, float):
        return config.screen
    match = _SCREEN_PATTERN.match(config.screen)
    channel_name, mode_name = match.group(1), match.group(2)
    spec = next(ch for ch in config.channels if ch.name == channel_name)
    offset = channel_offset(spec, config.lens.lens_medium.dispersion)
    mode = PolarizationMode[mode_name]
    try:
        solution = solve_image(
            config.lens, offset, mode, config.object_distance, config.composition
        )
    except ImageAtInfinity as exc:
        raise ConfigError(f"screen: {config.screen} has no finite conjugate") from exc
    if solution.image_distance <= 0.0:
        raise ConfigError(
            f"screen: {config.screen} resolves to a virtual image "
            f"(d_i = {solution.image_distance:g} m); give an explicit distance_m"
        )
    return solution.image_distance
