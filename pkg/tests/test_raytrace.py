"""Exact trace oracle: bimodal Snell, surface geometry, paraxial convergence."""
import math
from dataclasses import replace

import pytest

import oracles
from chiralens.defaults import default_lens
from chiralens.errors import NonPhysical, TotalInternalReflection
from chiralens.media import PolarizationMode
from chiralens.raytrace import (
    TraceStatus,
    chiral_snell,
    paraxial_agreement_report,
    trace_meridional,
)

LCP, RCP = PolarizationMode.LCP, PolarizationMode.RCP


class TestChiralSnell:
    def test_spot_values(self):
        theta = math.radians(30.0)
        assert chiral_snell(theta, 1.0, 4.0, 0.5, RCP) == pytest.approx(math.asin(0.2), abs=1e-12)
        assert chiral_snell(theta, 1.0, 4.0, 0.5, LCP) == pytest.approx(
            math.asin(1.0 / 3.0), abs=1e-12
        )

    def test_normal_incidence_undeviated(self):
        for mode in (LCP, RCP):
            for kappa in (0.0, 0.5, 1.7):
                assert chiral_snell(0.0, 1.0, 4.0, kappa, mode) == 0.0

    def test_kappa_zero_modes_identical(self):
        theta = 0.4
        assert chiral_snell(theta, 1.0, 5.5, 0.0, LCP) == chiral_snell(theta, 1.0, 5.5, 0.0, RCP)

    def test_sign_follows_incidence(self):
        assert chiral_snell(-0.3, 1.0, 4.0, 0.5, RCP) == -chiral_snell(0.3, 1.0, 4.0, 0.5, RCP)

    def test_total_internal_reflection(self):
        # LCP effective index 2.1 - 1.9 = 0.2 < sin(80 deg)
        with pytest.raises(TotalInternalReflection):
            chiral_snell(math.radians(80.0), 1.0, 4.41, 1.9, LCP)

    def test_nonpositive_effective_index(self):
        with pytest.raises(NonPhysical):
            chiral_snell(0.1, 1.0, 4.0, 2.5, LCP)

    def test_grazing_incidence_rejected(self):
        with pytest.raises(ValueError):
            chiral_snell(math.pi / 2, 1.0, 4.0, 0.5, RCP)

    def test_monotone_in_kappa(self):
        theta = 0.35
        rcp = [chiral_snell(theta, 1.0, 4.0, k, RCP) for k in (0.0, 0.4, 0.8, 1.2)]
        lcp = [chiral_snell(theta, 1.0, 4.0, k, LCP) for k in (0.0, 0.4, 0.8, 1.2)]
        assert all(b < a for a, b in zip(rcp, rcp[1:]))
        assert all(b > a for a, b in zip(lcp, lcp[1:]))


class TestTraceMeridional:
    def test_axial_ray_undeviated(self, lens):
        result = trace_meridional(lens, 0.0, 0.0, oracles.OFFSET_RED, LCP)
        assert result.status is TraceStatus.OK
        assert len(result.surface_hits) == 2
        assert result.exit_ray.height == 0.0
        assert result.exit_ray.angle == 0.0

    def test_kappa_zero_modes_identical(self):
        lens = default_lens(0.0)
        left = trace_meridional(lens, 2e-3, 0.01, 0.0, LCP)
        right = trace_meridional(lens, 2e-3, 0.01, 0.0, RCP)
        assert left == right

    def test_two_hits_inside_aperture(self, lens):
        result = trace_meridional(lens, 3e-3, 0.0, 0.0, RCP)
        assert result.status is TraceStatus.OK
        (s1, s2) = result.surface_hits
        assert s1.surface == 1 and s2.surface == 2
        assert abs(s1.point[1]) <= lens.aperture_radius
        assert 0.0 < s2.point[0] <= lens.thickness

    def test_converging_ray_crosses_axis(self, lens):
        result = trace_meridional(lens, 3e-3, 0.0, 0.0, RCP)
        assert result.exit_ray.angle < 0.0  # bent toward the axis

    def test_entry_height_outside_aperture_rejected(self, lens):
        with pytest.raises(ValueError):
            trace_meridional(lens, lens.aperture_radius, 0.0, 0.0, LCP)

    def test_missed_surface_status(self, lens):
        # steep upward ray walks out of the aperture before surface 2
        result = trace_meridional(lens, 4.5e-3, 0.5, 0.0, LCP)
        assert result.status is TraceStatus.MISSED_SURFACE
        assert result.exit_ray is None

    def test_concave_front_surface_traces(self, lens):
        concave = replace(lens, r1=-0.1, r2=0.1)
        result = trace_meridional(concave, 2e-3, 0.0, 0.0, RCP)
        assert result.status is TraceStatus.OK
        assert result.surface_hits[0].point[0] < 0.0  # surface bulges left of V1
        assert result.exit_ray.angle > 0.0  # diverging lens

    def test_flat_slab_restores_angle(self):
        slab = replace(default_lens(0.5), r1=1e9, r2=-1e9)
        for mode in (LCP, RCP):
            result = trace_meridional(slab, 1e-3, 0.2, oracles.OFFSET_RED, mode)
            assert result.status is TraceStatus.OK
            assert result.exit_ray.angle == pytest.approx(0.2, abs=1e-10)

    def test_total_internal_reflection_at_exit(self):
        # high index inside, steep internal angle at the second surface
        steep = replace(default_lens(2.0), r1=0.011, r2=-0.011, thickness=0.008)
        result = trace_meridional(steep, 4.4e-3, 0.0, 0.0, RCP)
        assert result.status is TraceStatus.TOTAL_INTERNAL_REFLECTION
        assert result.exit_ray is None


class TestParaxialAgreement:
    def test_zero_height_residual_is_exactly_zero(self, lens):
        rows = paraxial_agreement_report(lens, 0.0, LCP, [0.0])
        assert rows[0].residual == 0.0

    def test_kappa_zero_reports_identical(self):
        lens = default_lens(0.0)
        heights = [2.5e-5, 5e-5, 1e-4]
        left = paraxial_agreement_report(lens, 0.0, LCP, heights)
        right = paraxial_agreement_report(lens, 0.0, RCP, heights)
        assert left == right

    def test_cubic_convergence(self, lens):
        top = 1e-3 * abs(lens.r1)
        heights = [top / 4.0, top / 2.0, top]
        for mode in (LCP, RCP):
            rows = paraxial_agreement_report(lens, oracles.OFFSET_BLUE, mode, heights)
            ratios = [big.residual / small.residual for small, big in zip(rows, rows[1:])]
            for ratio in ratios:
                assert 3.5 <= ratio <= 10.0
                assert math.log2(ratio) >= 1.9

    def test_height_validation(self, lens):
        with pytest.raises(ValueError):
            paraxial_agreement_report(lens, 0.0, LCP, [-1e-5])
        with pytest.raises(ValueError):
            paraxial_agreement_report(lens, 0.0, LCP, [2e-4, 1e-4])
        with pytest.raises(ValueError):
            paraxial_agreement_report(lens, 0.0, LCP, [lens.aperture_radius])
