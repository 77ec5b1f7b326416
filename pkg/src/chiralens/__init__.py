"""Bimodal matrix-optics simulation of a chiral dispersive thick lens."""

from .errors import (
    ChiralLensError,
    ConfigError,
    DegenerateScale,
    DegenerateSurface,
    ImageAtInfinity,
    InfiniteFocus,
    MalformedFile,
    MissedSurface,
    NonPhysical,
    NoThreshold,
    OutOfBand,
    PhysicsError,
    RasterError,
    TotalInternalReflection,
    UnsupportedFormat,
)
from .media import (
    SPEED_OF_LIGHT,
    BackgroundMedium,
    ChannelSpec,
    ChiralMedium,
    DispersionModel,
    PolarizationMode,
    channel_offset,
    vacuum_angular_frequency,
)
from .matrix_optics import (
    Composition,
    ImagingSolution,
    Ray,
    RayTransferMatrix,
    ThickLensSpec,
    focal_length,
    refracting_power,
    solve_image,
    system_matrix,
    thick_lens_matrix,
    translation_matrix,
    validate_for_imaging,
)
from .raytrace import (
    AgreementRow,
    ExitRay,
    SurfaceHit,
    TraceResult,
    TraceStatus,
    chiral_snell,
    paraxial_agreement_report,
    trace_meridional,
)
from .imaging import (
    ChannelReport,
    ConjugateRow,
    ScreenImage,
    Transparency,
    conjugate_planes,
    disc_kernel,
    load_transparency,
    render_at_screen,
    save_screen_image,
)
from .sweeps import (
    SweepParameter,
    SweepRow,
    SweepSpec,
    ThresholdKind,
    ThresholdResult,
    emit_csv,
    find_threshold,
    focal_sweep,
)

__version__ = "0.1.0"
