"""Command line surface tying the solver, sweeps, tracer and renderer together.

Subcommands: solve | sweep | render | trace-check | defaults. Every file
output is deterministic: rerunning a command with the same config and inputs
reproduces byte-identical files. Exit codes: 0 ok, 2 config error, 3 physics
error, 4 I/O error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from .config import RunConfig, load_config, resolve_screen
from .defaults import default_config_dict
from .errors import ConfigError, PhysicsError, RasterError
from .imaging import conjugate_planes, load_transparency, render_at_screen, save_screen_image
from .matrix_optics import thick_lens_matrix
from .media import PolarizationMode, channel_offset
from .raytrace import paraxial_agreement_report
from .sweeps import (
    NoThreshold,
    SweepParameter,
    SweepSpec,
    emit_csv,
    find_threshold,
    focal_sweep,
    sweep_rows_as_cells,
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chiralens",
        description="bimodal imaging through a chiral dispersive thick lens",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--config", required=True, help="path to a JSON run configuration")
        p.add_argument("--out", default=None, help="override the configured output directory")
        p.add_argument("--threads", type=int, default=1, help="worker threads for rendering")

    p_solve = sub.add_parser("solve", help="conjugate planes per channel and mode")
    add_common(p_solve)

    p_sweep = sub.add_parser("sweep", help="focal length versus chirality")
    add_common(p_sweep)
    p_sweep.add_argument("--parameter", default="kappa", choices=["kappa"])
    p_sweep.add_argument("--start", type=float, default=0.0)
    p_sweep.add_argument("--stop", type=float, default=3.0)
    p_sweep.add_argument("--step", type=float, default=0.01)

    p_render = sub.add_parser("render", help="render both mode images at the screen")
    add_common(p_render)

    p_trace = sub.add_parser("trace-check", help="exact trace versus matrix agreement")
    add_common(p_trace)
    p_trace.add_argument("--channel", default="G", choices=["R", "G", "B"])
    p_trace.add_argument("--mode", default="LCP", choices=["LCP", "RCP"])
    p_trace.add_argument(
        "--heights",
        default=None,
        help="comma separated heights in meters (default: 1e-3*|r1| halved twice)",
    )

    sub.add_parser("defaults", help="print the calibrated default configuration")
    return parser


def _output_dir(config: RunConfig, args) -> Path:
    out = Path(args.out) if args.out else config.output_dir
    out.mkdir(parents=True, exist_ok=True)
    return out


def _fmt(value, width=14) -> str:
    if value is None:
        return "at-infinity".ljust(width)
    if isinstance(value, float):
        if math.isinf(value):
            return "afocal".ljust(width)
        return f"{value:+.6g}".ljust(width)
    return str(value).ljust(width)


def _cmd_solve(args) -> int:
    config = load_config(args.config)
    out_dir = _output_dir(config, args)
    transparency = load_transparency(config.object_path, config.object_pitch, config.channels)
    rows = conjugate_planes(transparency, config.lens, config.object_distance, config.composition)

    cells = [
        (r.channel, r.mode, r.image_distance, r.magnification, r.is_real, r.status) for r in rows
    ]
    csv_path = out_dir / "conjugates.csv"
    emit_csv(["channel", "mode", "d_i_m", "magnification", "is_real", "status"], cells, csv_path)

    n1 = config.lens.background.n_p1
    print(f"conjugate planes at d_o = {config.object_distance:g} m "
          f"(composition: {config.composition.value})")
    print("channel mode  d_i [m]       magnification  focal [m]     principal H1/H2 [m]   real?")
    for row in rows:
        spec = next(ch for ch in config.channels if ch.name == row.channel)
        offset = channel_offset(spec, config.lens.lens_medium.dispersion)
        m = thick_lens_matrix(config.lens, offset, row.mode, config.composition)
        if m.c != 0.0:
            focal = -n1 / m.c
            h1 = n1 * (m.d - 1.0) / m.c
            h2 = n1 * (1.0 - m.a) / m.c
            planes = f"{h1:+.4g}/{h2:+.4g}".ljust(21)
        else:
            focal = math.inf
            planes = "afocal".ljust(21)
        real = {True: "yes", False: "no", None: "-"}[row.is_real]
        print(f"{row.channel:7s} {row.mode.name:5s} {_fmt(row.image_distance)}"
              f"{_fmt(row.magnification, 15)}{_fmt(focal)}{planes} {real}")
    print(f"wrote {csv_path}")
    return 0


def _cmd_sweep(args) -> int:
    config = load_config(args.config)
    out_dir = _output_dir(config, args)
    if args.step <= 0.0:
        raise ConfigError("sweep step must be positive")
    if args.stop < args.start:
        raise ConfigError("sweep stop must be >= start")
    count = int(math.floor((args.stop - args.start) / args.step + 1e-9)) + 1
    grid = tuple(args.start + i * args.step for i in range(count))
    spec = SweepSpec(
        parameter=SweepParameter(args.parameter),
        grid=grid,
        channels=config.channels,
        modes=(PolarizationMode.LCP, PolarizationMode.RCP),
        lens=config.lens,
    )
    rows = focal_sweep(spec)

    comments = []
    for channel in config.channels:
        try:
            result = find_threshold(config.lens, channel)
        except NoThreshold:
            comments.append(f"#threshold,{channel.name},LCP,none,,")
            continue
        comments.append(
            f"#threshold,{channel.name},LCP,{result.kappa_star:.17g},{result.kind.value},"
            f"{result.bracket[0]:.17g},{result.bracket[1]:.17g}"
        )

    csv_path = out_dir / "focal_sweep.csv"
    emit_csv(
        ["kappa", "channel", "mode", "f_m", "status"],
        sweep_rows_as_cells(rows),
        csv_path,
        trailing_comments=comments,
    )
    print(f"swept kappa over [{grid[0]:g}, {grid[-1]:g}] in {len(grid)} steps")
    for line in comments:
        print(line)
    print(f"wrote {csv_path}")
    return 0


def _cmd_render(args) -> int:
    config = load_config(args.config)
    out_dir = _output_dir(config, args)
    transparency = load_transparency(config.object_path, config.object_pitch, config.channels)
    screen = resolve_screen(config)
    stem = config.object_path.stem

    reports = {}
    for mode in (PolarizationMode.LCP, PolarizationMode.RCP):
        image = render_at_screen(
            transparency,
            config.lens,
            config.object_distance,
            screen,
            mode,
            config.composition,
            workers=max(1, args.threads),
        )
        path = out_dir / f"{stem}_{mode.name.lower()}.ppm"
        save_screen_image(image, path)
        reports[mode] = image.per_channel_report
        print(f"{mode.name}: wrote {path} (pitch {image.pitch:.4g} m/px)")

    cells = []
    for index in range(3):
        for mode in (PolarizationMode.LCP, PolarizationMode.RCP):
            r = reports[mode][index]
            cells.append(
                (r.channel, r.mode, r.image_distance, r.magnification, r.blur_radius, r.is_real)
            )
    csv_path = out_dir / f"{stem}_report.csv"
    emit_csv(
        ["channel", "mode", "d_i_m", "magnification", "blur_radius_m", "is_real"],
        cells,
        csv_path,
    )
    print(f"screen at {screen:.6g} m from the back vertex")
    print(f"wrote {csv_path}")
    return 0


def _cmd_trace_check(args) -> int:
    config = load_config(args.config)
    out_dir = _output_dir(config, args)
    if args.heights:
        try:
            heights = [float(part) for part in args.heights.split(",")]
        except ValueError:
            raise ConfigError("--heights must be comma separated numbers") from None
    else:
        top = 1e-3 * abs(config.lens.r1)
        heights = [top / 4.0, top / 2.0, top]
    spec = next(ch for ch in config.channels if ch.name == args.channel)
    offset = channel_offset(spec, config.lens.lens_medium.dispersion)
    mode = PolarizationMode[args.mode]
    try:
        rows = paraxial_agreement_report(
            config.lens, offset, mode, heights, config.composition
        )
    except ValueError as exc:
        raise ConfigError(f"--heights: {exc}") from None

    cells = [
        (
            r.height,
            r.exact_height,
            r.exact_reduced_angle,
            r.paraxial_height,
            r.paraxial_reduced_angle,
            r.residual,
        )
        for r in rows
    ]
    csv_path = out_dir / "trace_check.csv"
    emit_csv(
        ["height_m", "exact_h", "exact_u", "parax_h", "parax_u", "residual"], cells, csv_path
    )
    for small, big in zip(rows, rows[1:]):
        if small.residual > 0.0 and big.residual > 0.0:
            order = math.log2(big.residual / small.residual)
            print(f"h {small.height:g} -> {big.height:g}: observed order {order:.3f}")
    print(f"wrote {csv_path}")
    return 0


def _cmd_defaults(_args) -> int:
    print(json.dumps(default_config_dict(), indent=2))
    return 0


_HANDLERS = {
    "solve": _cmd_solve,
    "sweep": _cmd_sweep,
    "render": _cmd_render,
    "trace-check": _cmd_trace_check,
    "defaults": _cmd_defaults,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except PhysicsError as exc:
        print(f"physics error: {exc}", file=sys.stderr)
        return 3
    except (RasterError, OSError) as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    raise SystemExit(main())
