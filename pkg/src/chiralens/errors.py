"""Exception types shared across the package.

The CLI maps these onto exit codes: ConfigError -> 2, PhysicsError and
subclasses -> 3, RasterError and OSError -> 4.
"""


class ChiralLensError(Exception):
    """Base class for all package errors."""


class ConfigError(ChiralLensError):
    """A run configuration violates an invariant; the message names the key."""


class PhysicsError(ChiralLensError):
    """Base class for errors arising from the optics itself."""


class OutOfBand(PhysicsError):
    """Frequency offset outside the validated dispersion band."""


class NonPhysical(PhysicsError):
    """Configuration yields a non-positive permittivity or phase index."""


class DegenerateSurface(PhysicsError):
    """Surface radius of zero has no defined refracting power."""


class InfiniteFocus(PhysicsError):
    """|1/f| fell below the pole epsilon: the afocal resonance condition."""


class ImageAtInfinity(PhysicsError):
    """Object sits at the front focal plane; no finite conjugate exists."""


class TotalInternalReflection(PhysicsError):
    """No transmitted ray exists at an interface."""


class MissedSurface(PhysicsError):
    """A traced ray does not meet a surface inside the aperture."""


class NoThreshold(PhysicsError):
    """No focal sign flip inside the searched chirality range."""


class DegenerateScale(PhysicsError):
    """Transverse image scale too close to zero to rasterize."""


class RasterError(ChiralLensError):
    """Base class for raster file failures."""


class UnsupportedFormat(RasterError):
    """File extension or magic number is not handled."""


class MalformedFile(RasterError):
    """Raster file violates its format; carries the offending byte offset."""

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)
        self.offset = offset
