"""可容许条件验证测试"""
import dataclasses

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from core.admissibility import (
    AdmissiblePoint,
    RegionArrays,
    RegionSampler,
    boundary_supremum,
    parameter_sweep,
    re_psi,
    region_arrays,
    sample_region,
    sweep_admissibility,
    tau_for,
    verify_admissibility,
)
from core.catalog import Interval, find_criterion, get_catalog
from core.exceptions import ConfigError, DomainError, ParamOutOfDomain
from core.expr import PARAMS, QUOTIENT_VARS, REGION_VARS, parse_expr


def first_params(spec):
    """参数区间内的第一个扫描点"""
    return parameter_sweep(spec.alpha_domain, 3).values[-1], parameter_sweep(spec.beta_domain, 3).values[0]


class TestPoints:
    def test_boundary_tau(self):
        assert tau_for(1.0, 1.0) == pytest.approx(2.0)
        AdmissiblePoint(1.0, 2.0, 0.0, 0.0)

    @pytest.mark.parametrize("point", [(0.0, 1.0, 0, 0), (1.0, 1.9, 0, 0), (1.0, 2.0, 0, -1.0), (-1.0, -1.9, 0, 0)])
    def test_invalid(self, point):
        with pytest.raises(DomainError):
            AdmissiblePoint(*point)

    def test_mirror(self):
        p = AdmissiblePoint(0.5, 2.0, 0.3, 1.0)
        assert p.mirror().as_tuple() == (-0.5, -2.0, 0.3, -1.0)
        assert p.mirror().mirror() == p


class TestSampler:
    def test_default_size(self):
        sampler = RegionSampler.from_config()
        assert sampler.size == 119_808
        assert sampler.size >= 10 ** 5

    @pytest.mark.parametrize("overrides", [
        {"rho_range": (0.0, 1.0)},
        {"rho_range": (2.0, 1.0)},
        {"slack_range": (0.5, 2.0)},
        {"eta_max": -1.0},
        {"rho_count": 0},
    ])
    def test_invalid(self, overrides):
        with pytest.raises(ConfigError):
            RegionSampler.from_config(**overrides)

    def test_order_matches_arrays(self, small_sampler):
        points = list(sample_region(small_sampler))
        arrays = region_arrays(small_sampler)
        assert len(points) == len(arrays) == small_sampler.size
        for i in (0, 1, 2, 3, len(points) // 2, len(points) - 1):
            np.testing.assert_allclose(points[i].as_tuple(), arrays.point(i).as_tuple(), rtol=1e-15)

    def test_xi_varies_fastest_and_positive_branch_first(self, small_sampler):
        arrays = region_arrays(small_sampler)
        assert list(arrays.xi[:3]) == [-1.0, 0.0, 1.0]
        assert arrays.rho[0] > 0 and arrays.rho[-1] < 0

    def test_single_xi(self):
        sampler = RegionSampler(rho_count=4, slack_count=2, eta_count=1, xi_count=1, include_negative_branch=False)
        arrays = region_arrays(sampler)
        assert len(arrays) == 4 * 2 * 2
        assert not np.any(arrays.xi)

    def test_every_point_is_admissible(self, small_sampler):
        arrays = region_arrays(small_sampler)
        assert np.all(arrays.rho * arrays.tau >= (1 + 3 * arrays.rho ** 2) / 2 * (1 - 1e-12))
        assert np.all(arrays.rho * arrays.eta >= 0)


class TestSweep:
    def test_closed_half_line(self):
        axis = parameter_sweep(Interval.parse("[0,inf)"), 8)
        assert axis.truncated
        assert axis.values[0] == 0 and axis.values[-1] == 4
        assert len(axis.values) == 8

    def test_open_end_excluded(self):
        axis = parameter_sweep(Interval.parse("(0,inf)"), 8)
        assert len(axis.values) == 8
        assert min(axis.values) > 0

    def test_non_positive(self):
        axis = parameter_sweep(Interval.parse("(-inf,0]"), 5)
        assert axis.values == (-4.0, -3.0, -2.0, -1.0, 0.0)

    def test_bounded(self):
        axis = parameter_sweep(Interval.parse("[0,1]"), 3, truncation=10)
        assert axis.values == (0.0, 0.5, 1.0)
        assert not axis.truncated

    def test_needs_points(self):
        with pytest.raises(ConfigError):
            parameter_sweep(Interval.parse("[0,1]"), 0)


class TestVerify:
    def test_passes_with_extremum(self, small_sampler):
        spec = find_criterion("T2.1.i")
        report = verify_admissibility(spec, 1.0, 0.0, small_sampler)
        assert report.passed
        assert report.verdict == "pass"
        assert report.value <= report.threshold
        AdmissiblePoint(*report.arg)
        assert report.samples == small_sampler.size

    def test_lt_direction_reports_minimum(self, small_sampler):
        report = verify_admissibility(find_criterion("T2.9.i"), 1.0, 1.0, small_sampler)
        assert report.passed
        assert report.details["direction"] == "LT"
        assert report.value >= report.threshold

    def test_param_domain(self, small_sampler):
        with pytest.raises(ParamOutOfDomain):
            verify_admissibility(find_criterion("T2.10.i"), 1.0, 2.0, small_sampler)

    def test_beta_non_positive_domain(self, small_sampler):
        assert verify_admissibility(find_criterion("T2.10.i"), 1.0, -2.0, small_sampler).passed

    def test_sign_flipped_control_fails(self, small_sampler):
        spec = find_criterion("T2.1.i")
        flipped = dataclasses.replace(
            spec,
            id="control",
            psi=parse_expr("-u*v", QUOTIENT_VARS + PARAMS),
            re_formula=parse_expr("rho*tau", REGION_VARS + PARAMS),
        )
        report = verify_admissibility(flipped, 1.0, 0.0, small_sampler)
        assert not report.passed
        assert report.verdict == "fail"

    def test_all_entries_on_small_lattice(self, catalog, small_sampler):
        for spec in catalog:
            alpha, beta = first_params(spec)
            report = verify_admissibility(spec, alpha, beta, small_sampler)
            assert report.passed, spec.id
            assert report.details["formula_gap"] <= 1e-9, spec.id
            assert report.details["xi_spread"] <= 1e-6, spec.id
            assert report.details["branch_gap"] <= 1e-6, spec.id

    def test_sweep(self, small_sampler):
        reports = sweep_admissibility(find_criterion("T2.1.i"), small_sampler, points=3)
        assert len(reports) == 9
        assert all(r.passed for r in reports)
        assert reports[0].details["alpha_truncated"]
        assert [(r.alpha, r.beta) for r in reports[:3]] == [(0.0, 0.0), (0.0, 2.0), (0.0, 4.0)]


@given(
    st.floats(1e-3, 1e2),
    st.floats(1.0, 10.0),
    st.floats(-1.0, 1.0),
    st.floats(-1.0, 1.0),
    st.floats(0.0, 1e2),
)
@settings(max_examples=100, deadline=None)
def test_xi_independence_and_branch_symmetry(rho, slack, xi1, xi2, eta):
    """ξ 不影响 Re ψ，且 (ρ, τ, η) → (−ρ, −τ, −η) 不改变 Re ψ"""
    tau = tau_for(rho, slack)
    region = RegionArrays(
        rho=np.array([rho, rho, -rho]),
        tau=np.array([tau, tau, -tau]),
        xi=np.array([xi1, xi2, xi1]),
        eta=np.array([eta, eta, -eta]),
    )
    for spec in get_catalog():
        alpha, beta = first_params(spec)
        values = re_psi(spec, region, alpha, beta)
        scale = max(1.0, float(np.max(np.abs(values))))
        assert abs(values[0] - values[1]) <= 1e-12 * scale, spec.id
        assert abs(values[0] - values[2]) <= 1e-12 * scale, spec.id


class TestSupremum:
    def test_tight_constant(self):
        sup = boundary_supremum(find_criterion("T2.1.i"), 1.0, 0.0)
        assert sup.value == pytest.approx(-0.5, abs=1e-3)
        assert sup.value == pytest.approx(-(1 + 3e-6) / 2, rel=1e-9)
        assert abs(sup.arg.rho) == pytest.approx(1e-3)

    def test_ratio_bound(self):
        sampler = RegionSampler.from_config(rho_range=(1e-3, 10.0))
        sup = boundary_supremum(find_criterion("T2.10.i"), 1.0, 0.0, sampler)
        assert sup.value == pytest.approx(200 / 301, rel=1e-9)
        assert sup.value == pytest.approx(2 / 3, abs=5e-3)

    def test_lt_rejected(self):
        with pytest.raises(DomainError):
            boundary_supremum(find_criterion("T2.9.i"), 1.0, 0.0)


@pytest.mark.slow
def test_full_admissibility_sweep(catalog):
    failures = []
    for spec in catalog:
        for report in sweep_admissibility(spec):
            if not report.passed:
                failures.append((spec.id, report.alpha, report.beta, report.value))
    assert not failures
