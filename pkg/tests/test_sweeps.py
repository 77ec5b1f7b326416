"""Chirality sweeps, threshold bisection, CSV determinism."""
import math

import pytest

import oracles
from chiralens.defaults import default_channels, default_lens
from chiralens.errors import NoThreshold
from chiralens.matrix_optics import focal_length
from chiralens.media import ChannelSpec, ChiralMedium, DispersionModel, PolarizationMode
from chiralens.sweeps import (
    SweepParameter,
    SweepSpec,
    ThresholdKind,
    emit_csv,
    find_threshold,
    focal_sweep,
    sweep_rows_as_cells,
)

LCP, RCP = PolarizationMode.LCP, PolarizationMode.RCP


def kappa_grid(stop=3.0, step=0.01):
    count = int(math.floor(stop / step + 1e-9)) + 1
    return tuple(i * step for i in range(count))


def make_spec(lens, grid, channels=None, modes=(LCP, RCP)):
    return SweepSpec(
        parameter=SweepParameter.KAPPA,
        grid=grid,
        channels=channels or default_channels(),
        modes=modes,
        lens=lens,
    )


class TestFocalSweep:
    def test_single_point_kappa_zero_gives_equal_modes(self, lens, channels):
        rows = focal_sweep(make_spec(lens, (0.0,), channels=(channels[0],)))
        assert len(rows) == 2
        assert rows[0].focal_length == rows[1].focal_length
        assert {row.mode for row in rows} == {LCP, RCP}

    def test_red_lcp_sign_structure(self, lens, channels):
        rows = focal_sweep(make_spec(lens, kappa_grid(), channels=(channels[0],), modes=(LCP,)))
        by_kappa = {round(r.kappa, 4): r for r in rows}
        for kappa in (0.0, 0.5, 1.0, 1.5, 1.79):
            assert by_kappa[kappa].status == "ok"
            assert by_kappa[kappa].focal_length > 0.0
        assert by_kappa[1.8].status == "pole"
        for kappa in (1.81, 2.0, 2.5, 2.79):
            assert by_kappa[kappa].status == "ok"
            assert by_kappa[kappa].focal_length < 0.0
        for kappa in (2.8, 2.9, 3.0):
            assert by_kappa[kappa].status == "nonphysical"

    def test_rcp_positive_throughout(self, lens):
        rows = focal_sweep(make_spec(lens, kappa_grid(), modes=(RCP,)))
        assert all(row.status == "ok" and row.focal_length > 0.0 for row in rows)

    def test_row_order_is_grid_major(self, lens, channels):
        rows = focal_sweep(make_spec(lens, (0.0, 1.0), channels=channels[:2]))
        keys = [(r.kappa, r.channel, r.mode.name) for r in rows]
        assert keys == [
            (0.0, "R", "LCP"), (0.0, "R", "RCP"), (0.0, "G", "LCP"), (0.0, "G", "RCP"),
            (1.0, "R", "LCP"), (1.0, "R", "RCP"), (1.0, "G", "LCP"), (1.0, "G", "RCP"),
        ]

    def test_deterministic(self, lens):
        spec = make_spec(lens, kappa_grid(1.0, 0.1))
        assert focal_sweep(spec) == focal_sweep(spec)

    def test_grid_validation(self, lens):
        with pytest.raises(ValueError):
            make_spec(lens, ())
        with pytest.raises(ValueError):
            make_spec(lens, (0.2, 0.1))
        with pytest.raises(ValueError):
            focal_sweep(
                SweepSpec(SweepParameter.WAVELENGTH, (0.1, 0.2), default_channels(), (LCP,), lens)
            )


class TestFindThreshold:
    def test_calibrated_anchor_thresholds(self, lens, channels):
        red = find_threshold(lens, channels[0])
        green = find_threshold(lens, channels[1])
        blue = find_threshold(lens, channels[2])
        assert red.kappa_star == pytest.approx(oracles.THRESHOLD_RED, abs=1e-8)
        assert green.kappa_star == pytest.approx(oracles.THRESHOLD_GREEN, abs=1e-8)
        assert blue.kappa_star == pytest.approx(oracles.THRESHOLD_BLUE, abs=1e-8)
        assert blue.kappa_star < green.kappa_star < red.kappa_star
        for result in (red, green, blue):
            assert result.kind is ThresholdKind.INDEX_MATCH_POLE
            lo, hi = result.bracket
            assert lo < result.kappa_star < hi
            assert hi - lo <= 1e-9

    def test_flat_medium_exact_threshold(self, lens):
        flat = DispersionModel(2.8**2, 0.0, 3.4e15, -1e15, 1e15)
        lens_flat = type(lens)(
            r1=lens.r1,
            r2=lens.r2,
            thickness=lens.thickness,
            lens_medium=ChiralMedium(flat, kappa=0.0),
            background=lens.background,
            aperture_radius=lens.aperture_radius,
        )
        result = find_threshold(lens_flat, ChannelSpec("G", 550e-9))
        assert result.kappa_star == pytest.approx(1.8, abs=1e-9)

    def test_pole_bracketing_signs(self, lens, channels):
        result = find_threshold(lens, channels[0])
        below = focal_length(default_lens(result.kappa_star - 1e-6), oracles.OFFSET_RED, LCP)
        above = focal_length(default_lens(result.kappa_star + 1e-6), oracles.OFFSET_RED, LCP)
        assert below > 0.0 > above
        assert abs(below) > 1e3 and abs(above) > 1e3

    def test_independent_of_search_ceiling(self, lens, channels):
        a = find_threshold(lens, channels[2], kappa_max=5.0)
        b = find_threshold(lens, channels[2], kappa_max=2.0)
        assert a.kappa_star == pytest.approx(b.kappa_star, abs=2e-9)

    def test_rcp_rejected(self, lens, channels):
        with pytest.raises(ValueError):
            find_threshold(lens, channels[0], mode=RCP)

    def test_no_threshold_when_index_below_background(self, lens):
        thin_medium = ChiralMedium(DispersionModel(0.81, 0.0, 3.4e15, -1e15, 1e15), kappa=0.0)
        weak = type(lens)(
            r1=lens.r1,
            r2=lens.r2,
            thickness=lens.thickness,
            lens_medium=thin_medium,
            background=lens.background,
            aperture_radius=lens.aperture_radius,
        )
        with pytest.raises(NoThreshold):
            find_threshold(weak, ChannelSpec("G", 550e-9))

    def test_no_threshold_when_ceiling_too_low(self, lens, channels):
        with pytest.raises(NoThreshold):
            find_threshold(lens, channels[0], kappa_max=1.0)


class TestEmitCsv:
    def test_empty_table_rejected_and_no_file(self, tmp_path):
        path = tmp_path / "empty.csv"
        with pytest.raises(ValueError):
            emit_csv(["a", "b"], [], path)
        assert not path.exists()

    def test_single_row_two_lines(self, tmp_path):
        path = tmp_path / "one.csv"
        emit_csv(["kappa", "f_m"], [(0.25, 0.03125)], path)
        assert path.read_text() == "kappa,f_m\n0.25,0.03125\n"

    def test_formatting_rules(self, tmp_path):
        path = tmp_path / "fmt.csv"
        emit_csv(
            ["x", "flag", "blank", "mode"],
            [(1.0 / 3.0, True, None, LCP)],
            path,
        )
        body = path.read_text().splitlines()[1]
        assert body == "0.33333333333333331,true,,LCP"

    def test_rerun_byte_identical(self, tmp_path, lens):
        rows = sweep_rows_as_cells(focal_sweep(make_spec(lens, kappa_grid(2.0, 0.05))))
        header = ["kappa", "channel", "mode", "f_m", "status"]
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        emit_csv(header, rows, a, trailing_comments=["#threshold,R,LCP,1.8,index_match_pole"])
        emit_csv(header, rows, b, trailing_comments=["#threshold,R,LCP,1.8,index_match_pole"])
        assert a.read_bytes() == b.read_bytes()
        assert b"\r" not in a.read_bytes()

    def test_pole_rows_use_literal_token(self, tmp_path, lens, channels):
        rows = focal_sweep(make_spec(lens, (1.8,), channels=(channels[0],), modes=(LCP,)))
        cells = sweep_rows_as_cells(rows)
        path = tmp_path / "pole.csv"
        emit_csv(["kappa", "channel", "mode", "f_m", "status"], cells, path)
        assert ",inf_pole,pole" in path.read_text()
