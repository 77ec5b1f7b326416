"""Exact meridional ray tracing through the two spherical surfaces.

This is the non-paraxial verification oracle for the ABCD matrices: rays are
intersected with the true spheres and refracted with the exact bimodal Snell
law at each surface. Geometry lives in the meridional plane with the optical
axis along z; V1 sits at z = 0 and V2 at z = thickness. Entry and exit states
are referenced at the vertex tangent planes, matching the matrix convention.

At the exit surface the transmitted angle is obtained from the same
tangential phase matching as at the entry, with the mode's effective index
(sqrt(eps_r2) -/+ kappa) now on the incident side. A mode stays itself across
both interfaces; no cross-mode conversion is traced.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import MissedSurface, NonPhysical, TotalInternalReflection
from .matrix_optics import Composition, ThickLensSpec, thick_lens_matrix
from .media import PolarizationMode


class TraceStatus(str, enum.Enum):
    OK = "ok"
    MISSED_SURFACE = "missed_surface"
    TOTAL_INTERNAL_REFLECTION = "total_internal_reflection"


@dataclass(frozen=True)
class SurfaceHit:
    """One surface interaction: index (1 or 2), hit point (z, y) in meters,
    and the signed incidence/transmission angles against the local normal."""

    surface: int
    point: tuple[float, float]
    incidence_angle: float
    transmission_angle: float


@dataclass(frozen=True)
class ExitRay:
    """True exit state: height at the V2 tangent plane and geometric angle."""

    height: float
    angle: float


@dataclass(frozen=True)
class TraceResult:
    status: TraceStatus
    surface_hits: tuple[SurfaceHit, ...]
    exit_ray: ExitRay | None


@dataclass(frozen=True)
class AgreementRow:
    height: float
    exact_height: float
    exact_reduced_angle: float
    paraxial_height: float
    paraxial_reduced_angle: float
    residual: float


def _snell_signed(theta_i: float, n_in: float, n_out: float) -> float:
    """Signed transmission angle from tangential phase matching."""
    s = n_in * math.sin(theta_i) / n_out
    if abs(s) > 1.0:
        raise TotalInternalReflection(
            f"n_in*sin(theta_i) = {n_in * math.sin(theta_i):g} exceeds index {n_out:g}"
        )
    return math.asin(s)


def chiral_snell(
    incidence_angle: float,
    n1: float,
    eps_r2: float,
    kappa: float,
    mode: PolarizationMode,
) -> float:
    """Bimodal refraction into a chiral medium of permittivity eps_r2.

    The right-circular mode sees the effective index sqrt(eps_r2) + kappa,
    the left-circular mode sqrt(eps_r2) - kappa. The returned angle carries
    the sign of the incidence angle.
    """
    if abs(incidence_angle) >= 0.5 * math.pi:
        raise ValueError("incidence angle must satisfy |theta_i| < pi/2")
    root = math.sqrt(eps_r2)
    n_eff = root - kappa if mode is PolarizationMode.LCP else root + kappa
    if n_eff <= 0.0:
        raise NonPhysical(f"effective index {n_eff:g} <= 0 for {mode}")
    return _snell_signed(incidence_angle, n1, n_eff)


def _sphere_cap_hit(pz, py, dz, dy, vertex_z, radius, forward_only):
    """Intersect the line p + t*d with the vertex-side cap of a sphere.

    The sphere has its vertex at (vertex_z, 0) and signed radius; its center
    sits at vertex_z + radius. Only intersections on the hemisphere carrying
    the vertex count as the physical surface. For the entry surface the line
    parameter may be negative (state referenced at the tangent plane, which a
    concave front surface lies behind); at the exit surface only forward
    propagation is accepted, smallest parameter first.
    """
    cz = vertex_z + radius
    mz = cz - pz
    my = -py
    b = dz * mz + dy * my
    cc = mz * mz + my * my - radius * radius
    disc = b * b - cc
    if disc < 0.0:
        return None
    sq = math.sqrt(disc)
    candidates = []
    for t in (b - sq, b + sq):
        if forward_only and t <= 0.0:
            continue
        hz = pz + t * dz
        hy = py + t * dy
        if (hz - cz) * radius <= 0.0:  # vertex-side cap
            candidates.append((t, hz, hy))
    if not candidates:
        return None
    return min(candidates, key=lambda c: c[0])


def _refract_at(hz, hy, cz, dz, dy, signed_radius):
    """Local frame at a hit point: forward normal and signed incidence angle.

    Returns (m, t, theta_i) where m is the unit normal oriented along the
    propagation direction and t its 90-degree counterclockwise perpendicular,
    so a direction decomposes as cos(theta)*m + sin(theta)*t.
    """
    norm = math.hypot(hz - cz, hy)
    nz = (hz - cz) / norm
    ny = hy / norm
    if nz * dz + ny * dy < 0.0:
        nz, ny = -nz, -ny
    tz, ty = -ny, nz
    theta_i = math.atan2(dz * tz + dy * ty, dz * nz + dy * ny)
    return (nz, ny), (tz, ty), theta_i


def trace_meridional(
    lens: ThickLensSpec,
    entry_height: float,
    entry_angle: float,
    omega_offset: float,
    mode: PolarizationMode,
) -> TraceResult:
    """Trace one meridional ray exactly through both surfaces.

    The incoming state (height, angle) is referenced at the V1 tangent plane;
    the exit state is referenced at the V2 tangent plane. Rays that miss a
    surface inside the aperture or reflect totally are reported through the
    result status rather than raised.
    """
    if abs(entry_height) >= lens.aperture_radius:
        raise ValueError("entry height must be inside the aperture")
    eps_r2 = lens.lens_medium.dispersion.relative_permittivity(omega_offset)
    kappa = lens.lens_medium.kappa
    n1 = lens.background.n_p1
    root = math.sqrt(eps_r2)
    n_eff = root - kappa if mode is PolarizationMode.LCP else root + kappa
    if n_eff <= 0.0:
        raise NonPhysical(f"effective index {n_eff:g} <= 0 for {mode}")

    dz, dy = math.cos(entry_angle), math.sin(entry_angle)
    hits: list[SurfaceHit] = []

    hit1 = _sphere_cap_hit(0.0, entry_height, dz, dy, 0.0, lens.r1, forward_only=False)
    if hit1 is None or abs(hit1[2]) > lens.aperture_radius:
        return TraceResult(TraceStatus.MISSED_SURFACE, tuple(hits), None)
    _, hz1, hy1 = hit1
    (nz, ny), (tz, ty), theta_i1 = _refract_at(hz1, hy1, lens.r1, dz, dy, lens.r1)
    try:
        theta_t1 = chiral_snell(theta_i1, n1, eps_r2, kappa, mode)
    except TotalInternalReflection:
        hits.append(SurfaceHit(1, (hz1, hy1), theta_i1, math.nan))
        return TraceResult(TraceStatus.TOTAL_INTERNAL_REFLECTION, tuple(hits), None)
    hits.append(SurfaceHit(1, (hz1, hy1), theta_i1, theta_t1))
    dz = math.cos(theta_t1) * nz + math.sin(theta_t1) * tz
    dy = math.cos(theta_t1) * ny + math.sin(theta_t1) * ty

    c2z = lens.thickness + lens.r2
    hit2 = _sphere_cap_hit(hz1, hy1, dz, dy, lens.thickness, lens.r2, forward_only=True)
    if hit2 is None or abs(hit2[2]) > lens.aperture_radius:
        return TraceResult(TraceStatus.MISSED_SURFACE, tuple(hits), None)
    _, hz2, hy2 = hit2
    (nz, ny), (tz, ty), theta_i2 = _refract_at(hz2, hy2, c2z, dz, dy, lens.r2)
    try:
        theta_t2 = _snell_signed(theta_i2, n_eff, n1)
    except TotalInternalReflection:
        hits.append(SurfaceHit(2, (hz2, hy2), theta_i2, math.nan))
        return TraceResult(TraceStatus.TOTAL_INTERNAL_REFLECTION, tuple(hits), None)
    hits.append(SurfaceHit(2, (hz2, hy2), theta_i2, theta_t2))
    dz = math.cos(theta_t2) * nz + math.sin(theta_t2) * tz
    dy = math.cos(theta_t2) * ny + math.sin(theta_t2) * ty

    # reference the exit state at the V2 plane (signed extrapolation)
    t_plane = (lens.thickness - hz2) / dz
    exit_height = hy2 + t_plane * dy
    exit_angle = math.atan2(dy, dz)
    return TraceResult(TraceStatus.OK, tuple(hits), ExitRay(exit_height, exit_angle))


def paraxial_agreement_report(
    lens: ThickLensSpec,
    omega_offset: float,
    mode: PolarizationMode,
    heights: list[float],
    composition: Composition = Composition.PAPER,
) -> list[AgreementRow]:
    """Tabulate exact-trace vs matrix exit states for axis-parallel rays.

    The residual is the Euclidean norm of (height error, reduced-angle error)
    with the exact angle reduced by the background index. Trace failures are
    raised, they do not produce rows.
    """
    if any(h < 0.0 for h in heights):
        raise ValueError("heights must be non-negative")
    if any(b <= a for a, b in zip(heights, heights[1:])):
        raise ValueError("heights must be strictly ascending")
    if any(h >= lens.aperture_radius for h in heights):
        raise ValueError("heights must lie inside the aperture")
    n1 = lens.background.n_p1
    matrix = thick_lens_matrix(lens, omega_offset, mode, composition)
    rows = []
    for h in heights:
        result = trace_meridional(lens, h, 0.0, omega_offset, mode)
        if result.status is TraceStatus.MISSED_SURFACE:
            raise MissedSurface(f"ray at height {h:g} missed a surface")
        if result.status is TraceStatus.TOTAL_INTERNAL_REFLECTION:
            raise TotalInternalReflection(f"ray at height {h:g} totally reflected")
        exact_h = result.exit_ray.height
        exact_u = n1 * result.exit_ray.angle
        parax_h = matrix.a * h
        parax_u = matrix.c * h
        rows.append(
            AgreementRow(
                height=h,
                exact_height=exact_h,
                exact_reduced_angle=exact_u,
                paraxial_height=parax_h,
                paraxial_reduced_angle=parax_u,
                residual=math.hypot(exact_h - parax_h, exact_u - parax_u),
            )
        )
    return rows
