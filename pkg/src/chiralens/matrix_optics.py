"""Reduced-angle ray transfer matrices of the chiral dispersive thick lens.

Conventions
-----------
Light travels left to right. A surface radius is positive when its center of
curvature lies to the right of the vertex, so a biconvex lens has r1 > 0 and
r2 < 0. The object distance is measured leftward from the front vertex V1,
image and screen distances rightward from the back vertex V2, all in the
background medium. The ray state is (height, reduced angle) with

    reduced angle = refractive index * geometric angle,

which makes every matrix here unimodular.

Two entry arrangements are supported for the lens matrix. `paper` places the
second-surface power in the A entry and the first-surface power in the D
entry; `standard` is the plain product (second surface) (gap) (first surface),
which swaps those roles. The two coincide exactly whenever the surface powers
are equal, e.g. for a symmetric biconvex lens, and share the B and C entries
always.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DegenerateSurface, ImageAtInfinity, InfiniteFocus, NonPhysical
from .media import BackgroundMedium, ChiralMedium, PolarizationMode

#: below this |1/f|, a lens is reported afocal instead of returning a huge f
POLE_EPSILON = 1e-9  # 1/m

#: below this |C*d_o/n1 + D|, the conjugate solve reports an image at infinity
INFINITY_EPSILON = 1e-12

_SPLIT = 134217729.0  # 2**27 + 1, Veltkamp split constant for binary64


class Composition(str, enum.Enum):
    PAPER = "paper"
    STANDARD = "standard"


def _two_product(x: float, y: float) -> tuple[float, float]:
    """Error-free product: returns (fl(x*y), exact residual)."""
    p = x * y
    xh = x * _SPLIT
    xh = xh - (xh - x)
    xl = x - xh
    yh = y * _SPLIT
    yh = yh - (yh - y)
    yl = y - yh
    err = ((xh * yh - p) + xh * yl + xl * yh) + xl * yl
    return p, err


@dataclass(frozen=True)
class Ray:
    """Paraxial ray state: transverse height (m) and reduced angle (index * rad)."""

    height: float
    reduced_angle: float


@dataclass(frozen=True)
class RayTransferMatrix:
    """2x2 reduced-angle ABCD matrix. a, d dimensionless; b meters; c 1/m."""

    a: float
    b: float
    c: float
    d: float

    @property
    def determinant(self) -> float:
        """a*d - b*c evaluated with compensated products.

        The compensation removes the evaluation rounding, so the value
        reported is the true determinant of the stored entries even when
        a*d and b*c nearly cancel.
        """
        p1, e1 = _two_product(self.a, self.d)
        p2, e2 = _two_product(self.b, self.c)
        return (p1 - p2) + (e1 - e2)

    def __matmul__(self, other: "RayTransferMatrix") -> "RayTransferMatrix":
        return RayTransferMatrix(
            a=self.a * other.a + self.b * other.c,
            b=self.a * other.b + self.b * other.d,
            c=self.c * other.a + self.d * other.c,
            d=self.c * other.b + self.d * other.d,
        )

    def apply(self, ray: Ray) -> Ray:
        return Ray(
            height=self.a * ray.height + self.b * ray.reduced_angle,
            reduced_angle=self.c * ray.height + self.d * ray.reduced_angle,
        )


@dataclass(frozen=True)
class ThickLensSpec:
    """Geometry and materials of a thick lens in a uniform background.

    Construction validates geometry only. Whether the left-circular index
    stays positive across the dispersion band is a property of how the lens
    is used; imaging entry points check it via `validate_for_imaging` so that
    chirality sweeps can still probe the non-physical region mode by mode.
    """

    r1: float
    r2: float
    thickness: float
    lens_medium: ChiralMedium
    background: BackgroundMedium
    aperture_radius: float

    def __post_init__(self):
        if self.r1 == 0.0 or self.r2 == 0.0:
            raise ValueError("surface radii must be nonzero")
        if self.thickness <= 0.0:
            raise ValueError("thickness must be positive")
        if self.aperture_radius <= 0.0:
            raise ValueError("aperture radius must be positive")


@dataclass(frozen=True)
class ImagingSolution:
    """Conjugate solution for one channel and mode, vertex referenced."""

    image_distance: float
    magnification: float
    focal_length: float
    is_real: bool


def validate_for_imaging(lens: ThickLensSpec) -> None:
    """Check the LCP index stays positive across the declared band.

    The permittivity is affine in the offset and the square root is monotone,
    so checking the two band edges covers the whole band.
    """
    for edge in (lens.lens_medium.dispersion.band_lo, lens.lens_medium.dispersion.band_hi):
        lens.lens_medium.phase_index(edge, PolarizationMode.LCP)


def refracting_power(radius: float, index_jump: float) -> float:
    """Surface power (n_after - n_before) / radius, in 1/m.

    Callers pass the signed jump their surface orientation prescribes: the
    entry surface of a lens takes n_lens - n_background, the exit surface
    n_background - n_lens.
    """
    if radius == 0.0:
        raise DegenerateSurface("surface radius must be nonzero")
    return index_jump / radius


def translation_matrix(length: float, index: float) -> RayTransferMatrix:
    """Free propagation over `length` in a medium of the given index."""
    if index <= 0.0:
        raise NonPhysical(f"translation index {index:g} <= 0")
    return RayTransferMatrix(1.0, length / index, 0.0, 1.0)


def thick_lens_matrix(
    lens: ThickLensSpec,
    omega_offset: float,
    mode: PolarizationMode,
    composition: Composition = Composition.PAPER,
) -> RayTransferMatrix:
    """Vertex-to-vertex matrix of the thick lens for one channel and mode."""
    n2 = lens.lens_medium.phase_index(omega_offset, mode)
    n1 = lens.background.n_p1
    d1 = refracting_power(lens.r1, n2 - n1)
    d2 = refracting_power(lens.r2, n1 - n2)
    t = lens.thickness / n2
    c = d2 * d1 * t - d1 - d2
    if composition is Composition.PAPER:
        return RayTransferMatrix(a=1.0 - d2 * t, b=t, c=c, d=1.0 - d1 * t)
    return RayTransferMatrix(a=1.0 - d1 * t, b=t, c=c, d=1.0 - d2 * t)


def focal_length(
    lens: ThickLensSpec,
    omega_offset: float,
    mode: PolarizationMode,
    pole_epsilon: float = POLE_EPSILON,
) -> float:
    """Signed focal length of the thick lens for one channel and mode.

    Evaluates the closed-form thick-lens expression; it agrees with
    -n1 / C of the lens matrix up to rounding. Raises InfiniteFocus instead
    of returning a huge value when |1/f| < pole_epsilon (this is the
    index-matched resonance where the lens turns afocal).
    """
    n2 = lens.lens_medium.phase_index(omega_offset, mode)
    n1 = lens.background.n_p1
    inv_f = ((n2 - n1) / n1) * (
        (1.0 / lens.r1 - 1.0 / lens.r2)
        + (lens.thickness / n2) * ((n2 - n1) / (lens.r1 * lens.r2))
    )
    if abs(inv_f) < pole_epsilon:
        raise InfiniteFocus(f"|1/f| = {abs(inv_f):g} < {pole_epsilon:g} 1/m")
    return 1.0 / inv_f


def solve_image(
    lens: ThickLensSpec,
    omega_offset: float,
    mode: PolarizationMode,
    object_distance: float,
    composition: Composition = Composition.PAPER,
    infinity_epsilon: float = INFINITY_EPSILON,
) -> ImagingSolution:
    """Solve the conjugate condition B_sys = 0 for the image distance.

    The object sits `object_distance` left of V1 in the background medium.
    The returned image distance is measured from V2, negative for a virtual
    image. Magnification is the A entry of the conjugate system matrix.
    """
    if object_distance <= 0.0:
        raise ValueError("object distance must be positive")
    m = thick_lens_matrix(lens, omega_offset, mode, composition)
    n1 = lens.background.n_p1
    denom = m.c * object_distance / n1 + m.d
    if abs(denom) < infinity_epsilon:
        raise ImageAtInfinity("object at the front focal plane")
    d_i = -n1 * (m.a * object_distance / n1 + m.b) / denom
    magnification = m.a + (d_i / n1) * m.c
    try:
        f = focal_length(lens, omega_offset, mode)
    except InfiniteFocus:
        f = math.inf
    return ImagingSolution(
        image_distance=d_i,
        magnification=magnification,
        focal_length=f,
        is_real=d_i > 0.0,
    )


def system_matrix(
    lens: ThickLensSpec,
    omega_offset: float,
    mode: PolarizationMode,
    object_distance: float,
    screen_distance: float,
    composition: Composition = Composition.PAPER,
) -> RayTransferMatrix:
    """Object plane to screen plane matrix: T(screen) @ lens @ T(object).

    Zero distances are legal (identity translations), so the bare lens matrix
    is the special case of both distances zero.
    """
    if object_distance < 0.0:
        raise ValueError("object distance must be >= 0")
    if screen_distance < 0.0:
        raise ValueError("screen distance must be >= 0")
    n1 = lens.background.n_p1
    lens_m = thick_lens_matrix(lens, omega_offset, mode, composition)
    return translation_matrix(screen_distance, n1) @ lens_m @ translation_matrix(object_distance, n1)
