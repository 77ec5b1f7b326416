"""Calibrated default configuration.

The bundled material model is a linear permittivity fit through two anchor
indices: 2.8 at the 700 nm channel center and 2.2 at the 450 nm channel
center, referenced to the 550 nm carrier. With the default background index
of 1 this puts the left-circular focal sign flips at kappa = 1.8 (red),
1.2 (blue) and about 1.523 (green).
"""
from __future__ import annotations

from .matrix_optics import ThickLensSpec
from .media import (
    BackgroundMedium,
    ChannelSpec,
    ChiralMedium,
    DispersionModel,
    vacuum_angular_frequency,
)

RED_WAVELENGTH = 700e-9
GREEN_WAVELENGTH = 550e-9
BLUE_WAVELENGTH = 450e-9

ANCHOR_INDEX_RED = 2.8
ANCHOR_INDEX_BLUE = 2.2

BAND_HALF_WIDTH = 1e15  # rad/s

DEFAULT_KAPPA = 0.5
DEFAULT_R1 = 0.1
DEFAULT_R2 = -0.1
DEFAULT_THICKNESS = 0.02
DEFAULT_APERTURE = 0.005
DEFAULT_OBJECT_DISTANCE = 0.5
DEFAULT_OBJECT_PITCH = 2.5e-4
DEFAULT_SCREEN = "conjugate:G:LCP"


def default_channels() -> tuple[ChannelSpec, ChannelSpec, ChannelSpec]:
    return (
        ChannelSpec("R", RED_WAVELENGTH),
        ChannelSpec("G", GREEN_WAVELENGTH),
        ChannelSpec("B", BLUE_WAVELENGTH),
    )


def default_dispersion() -> DispersionModel:
    """Linear permittivity through the red and blue index anchors."""
    omega_ref = vacuum_angular_frequency(GREEN_WAVELENGTH)
    offset_red = vacuum_angular_frequency(RED_WAVELENGTH) - omega_ref
    offset_blue = vacuum_angular_frequency(BLUE_WAVELENGTH) - omega_ref
    eps_red = ANCHOR_INDEX_RED**2
    eps_blue = ANCHOR_INDEX_BLUE**2
    slope = (eps_blue - eps_red) / (offset_blue - offset_red)
    eps_ref = eps_red - offset_red * slope
    return DispersionModel(
        eps_r_ref=eps_ref,
        eps_r_slope=slope,
        omega_ref=omega_ref,
        band_lo=-BAND_HALF_WIDTH,
        band_hi=BAND_HALF_WIDTH,
    )


def default_medium(kappa: float = DEFAULT_KAPPA) -> ChiralMedium:
    return ChiralMedium(dispersion=default_dispersion(), kappa=kappa, label="calibrated default")


def default_lens(kappa: float = DEFAULT_KAPPA) -> ThickLensSpec:
    """Symmetric biconvex lens, |R| = 0.1 m, 20 mm thick, 5 mm semi-aperture."""
    return ThickLensSpec(
        r1=DEFAULT_R1,
        r2=DEFAULT_R2,
        thickness=DEFAULT_THICKNESS,
        lens_medium=default_medium(kappa),
        background=BackgroundMedium(1.0),
        aperture_radius=DEFAULT_APERTURE,
    )


def default_config_dict(object_path: str = "object.ppm", output_dir: str = "out") -> dict:
    """The default run configuration in its on-disk (JSON) shape."""
    dispersion = default_dispersion()
    return {
        "lens": {
            "r1_m": DEFAULT_R1,
            "r2_m": DEFAULT_R2,
            "thickness_m": DEFAULT_THICKNESS,
            "aperture_m": DEFAULT_APERTURE,
        },
        "medium": {
            "eps_r_ref": dispersion.eps_r_ref,
            "eps_r_slope": dispersion.eps_r_slope,
            "omega_ref_rad_s": dispersion.omega_ref,
            "kappa": DEFAULT_KAPPA,
            "band_lo_rad_s": dispersion.band_lo,
            "band_hi_rad_s": dispersion.band_hi,
        },
        "background_index": 1.0,
        "channels": [
            {"name": "R", "wavelength_m": RED_WAVELENGTH},
            {"name": "G", "wavelength_m": GREEN_WAVELENGTH},
            {"name": "B", "wavelength_m": BLUE_WAVELENGTH},
        ],
        "object": {
            "path": object_path,
            "pitch_m": DEFAULT_OBJECT_PITCH,
            "distance_m": DEFAULT_OBJECT_DISTANCE,
        },
        "screen": DEFAULT_SCREEN,
        "composition": "paper",
        "output_dir": output_dir,
    }
