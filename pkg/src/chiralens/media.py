"""Dispersive chiral media and the per-mode phase indices.

Frequency is handled as a signed angular-frequency offset from a reference
carrier, so the first-order material dispersion reads

    eps_r(offset) = eps_r_ref + offset * eps_r_slope

and the two circular polarization eigenmodes of the chiral medium propagate
with phase indices sqrt(eps_r) - kappa (left) and sqrt(eps_r) + kappa (right).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import NonPhysical, OutOfBand

SPEED_OF_LIGHT = 299_792_458.0  # m/s, exact


class PolarizationMode(enum.IntEnum):
    """Circular polarization eigenmode. LCP < RCP fixes output ordering."""

    LCP = 0
    RCP = 1

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class DispersionModel:
    """Linear relative permittivity versus angular-frequency offset.

    `eps_r_slope` is in s/rad; `band_lo`/`band_hi` (rad/s) delimit the offsets
    the model is validated for, and the reference frequency `omega_ref`
    (absolute, rad/s) must sit inside the band (band_lo < 0 < band_hi).
    """

    eps_r_ref: float
    eps_r_slope: float
    omega_ref: float
    band_lo: float
    band_hi: float

    def __post_init__(self):
        if not (self.band_lo < 0.0 < self.band_hi):
            raise ValueError("dispersion band must straddle the reference (band_lo < 0 < band_hi)")
        if self.omega_ref <= 0.0:
            raise ValueError("omega_ref must be positive")
        # affine in the offset, so positivity at the endpoints covers the band
        for edge in (self.band_lo, self.band_hi):
            if self.eps_r_ref + edge * self.eps_r_slope <= 0.0:
                raise NonPhysical(
                    f"relative permittivity non-positive at band edge {edge:g} rad/s"
                )

    def relative_permittivity(self, omega_offset: float) -> float:
        """Evaluate eps_r at a signed offset from the reference frequency."""
        if not (self.band_lo <= omega_offset <= self.band_hi):
            raise OutOfBand(
                f"offset {omega_offset:g} rad/s outside validated band "
                f"[{self.band_lo:g}, {self.band_hi:g}]"
            )
        eps = self.eps_r_ref + omega_offset * self.eps_r_slope
        if eps <= 0.0:
            raise NonPhysical(f"relative permittivity {eps:g} <= 0 at offset {omega_offset:g}")
        return eps


@dataclass(frozen=True)
class ChiralMedium:
    """Dispersive medium with a dimensionless chirality parameter.

    A negative `kappa` is accepted and simply exchanges the roles of the two
    circular modes; configured runs enforce kappa >= 0 at the config boundary.
    """

    dispersion: DispersionModel
    kappa: float
    label: str = ""

    def phase_index(self, omega_offset: float, mode: PolarizationMode) -> float:
        """Per-mode phase index sqrt(eps_r) -/+ kappa (left/right)."""
        root = math.sqrt(self.dispersion.relative_permittivity(omega_offset))
        if mode is PolarizationMode.LCP:
            n = root - self.kappa
        else:
            n = root + self.kappa
        if n <= 0.0:
            raise NonPhysical(
                f"{mode} phase index {n:g} <= 0 (kappa={self.kappa:g}, sqrt(eps)={root:g})"
            )
        return n


@dataclass(frozen=True)
class BackgroundMedium:
    """Uniform achiral, dispersionless background the lens is immersed in."""

    n_p1: float = 1.0

    def __post_init__(self):
        if self.n_p1 < 1.0:
            raise ValueError("background index must be >= 1")


@dataclass(frozen=True)
class ChannelSpec:
    """A color channel: a name in {R, G, B} and its vacuum center wavelength."""

    name: str
    vacuum_wavelength: float

    def __post_init__(self):
        if self.name not in ("R", "G", "B"):
            raise ValueError(f"channel name must be R, G or B, got {self.name!r}")
        if not (300e-9 < self.vacuum_wavelength < 1100e-9):
            raise ValueError(
                f"channel {self.name}: wavelength {self.vacuum_wavelength:g} m outside (300 nm, 1100 nm)"
            )


def vacuum_angular_frequency(wavelength: float) -> float:
    return 2.0 * math.pi * SPEED_OF_LIGHT / wavelength


def channel_offset(channel: ChannelSpec, dispersion: DispersionModel) -> float:
    """Signed offset of the channel center from the model's reference frequency.

    Raises OutOfBand when the channel falls outside the validated band.
    """
    offset = vacuum_angular_frequency(channel.vacuum_wavelength) - dispersion.omega_ref
    if not (dispersion.band_lo <= offset <= dispersion.band_hi):
        raise OutOfBand(
            f"channel {channel.name} offset {offset:g} rad/s outside band "
            f"[{dispersion.band_lo:g}, {dispersion.band_hi:g}]"
        )
    return offset
