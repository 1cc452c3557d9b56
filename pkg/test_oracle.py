"""直接采样判定测试"""
import numpy as np
import pytest

from core.exceptions import DomainError
from core.oracle import DiskGrid, OracleVerdict, default_grid, min_re_qcv, min_re_qst, nonvanishing_check
from core.quotients import (
    CONVEX, NOT_STARLIKE, STARLIKE, koebe, parse_coeffs, quadratic, reference_zoo, resolve_function,
)
from core.report import FAILS, HOLDS, INCONCLUSIVE


class TestDiskGrid:
    def test_points_are_radius_major(self):
        grid = DiskGrid((0.5, 0.9), 8)
        z = grid.points()
        assert z.size == grid.size == 16
        np.testing.assert_allclose(np.abs(z[:8]), 0.5)
        assert z[8] == pytest.approx(0.9)

    @pytest.mark.parametrize("radii, angles", [
        ((), 8), ((0.0, 0.5), 8), ((0.5, 1.0), 8), ((0.5, 0.3), 8), ((0.5, 0.5), 8), ((0.5,), 4),
    ])
    def test_invalid(self, radii, angles):
        with pytest.raises(DomainError):
            DiskGrid(radii, angles)

    def test_refine_contains_original(self):
        grid = DiskGrid((0.3, 0.6), 8)
        fine = grid.refine().points()
        assert all(np.min(np.abs(fine - p)) < 1e-15 for p in grid.points())

    @pytest.mark.parametrize("spec", ["koebe", "quad:0.45", "mono:3:0.3", "0,1,0.2+0.3i,0,-0.1"])
    def test_refinement_never_raises_the_minimum(self, spec):
        f = resolve_function(spec) if ":" in spec or spec.isalpha() else parse_coeffs(spec)
        grid = DiskGrid((0.3, 0.7, 0.95), 16)
        for oracle in (min_re_qst, min_re_qcv):
            coarse = oracle(f, grid).min_value
            finer = oracle(f, grid.refine()).min_value
            finest = oracle(f, grid.refine().refine()).min_value
            assert finest <= finer <= coarse

    def test_default_grid(self):
        grid = default_grid()
        assert grid.r_max == 0.995
        assert grid.size == 8 * 512


def test_classify():
    assert OracleVerdict.classify(1e-3, 0j, 1e-6).verdict == HOLDS
    assert OracleVerdict.classify(-1e-3, 0j, 1e-6).verdict == FAILS
    assert OracleVerdict.classify(1e-7, 0j, 1e-6).verdict == INCONCLUSIVE


@pytest.mark.parametrize("a, expected, verdict", [
    (0.49, 0.0486, HOLDS),
    (0.51, -0.0303, FAILS),
    (0.6, -0.4814, FAILS),
])
def test_quadratic_starlikeness_flips_at_one_half(a, expected, verdict):
    result = min_re_qst(quadratic(a).taylor)
    assert result.min_value == pytest.approx(expected, abs=5e-4)
    assert result.verdict == verdict
    assert result.arg_min == pytest.approx(-0.995)


def test_quadratic_by_coefficients_matches_zoo():
    by_zoo = min_re_qst(quadratic(0.49).taylor)
    by_coeffs = min_re_qst(parse_coeffs("0,1,0.49"))
    assert by_coeffs.min_value == pytest.approx(by_zoo.min_value, abs=1e-12)


def test_koebe_starlike_not_convex():
    star = min_re_qst(koebe().taylor)
    assert star.verdict == HOLDS
    assert star.min_value == pytest.approx(0.005 / 1.995, rel=1e-6)
    assert star.arg_min == pytest.approx(-0.995)

    convex = min_re_qcv(koebe().taylor)
    assert convex.verdict == FAILS
    assert abs(convex.arg_min) > 0.27


def test_order_gamma():
    f = quadratic(0.2).taylor
    plain = min_re_qst(f)
    shifted = min_re_qst(f, gamma=0.5)
    assert shifted.min_value == pytest.approx(plain.min_value - 0.5)
    for gamma in (-0.1, 1.0, 1.5):
        with pytest.raises(DomainError):
            min_re_qst(f, gamma=gamma)
        with pytest.raises(DomainError):
            min_re_qcv(f, gamma=gamma)


@pytest.mark.parametrize("ref", reference_zoo(), ids=lambda r: r.id)
def test_zoo_statuses(ref):
    star = min_re_qst(ref.taylor)
    if ref.known_status in (STARLIKE, CONVEX):
        assert star.verdict == HOLDS
    elif ref.known_status == NOT_STARLIKE:
        assert star.verdict == FAILS
    if ref.known_status == CONVEX:
        assert min_re_qcv(ref.taylor).verdict == HOLDS


class TestNonvanishing:
    def test_polished_zero_of_derivative(self):
        result = nonvanishing_check(quadratic(0.6).taylor)
        assert result.verdict == FAILS
        assert result.arg_min == pytest.approx(-5 / 6, abs=1e-9)
        assert result.min_value < 1e-12

    def test_polynomial_input_is_polished_too(self):
        result = nonvanishing_check(parse_coeffs("0,1,0.6"))
        assert result.verdict == FAILS
        assert result.arg_min == pytest.approx(-5 / 6, abs=1e-9)

    @pytest.mark.parametrize("spec", ["quad:0.49", "koebe", "halfplane", "identity"])
    def test_holds(self, spec):
        assert nonvanishing_check(resolve_function(spec)).verdict == HOLDS

    def test_zero_outside_grid_ignored(self):
        # f'(z) = 1 + 1.2z 的零点 -5/6 在 r_max = 0.8 之外
        result = nonvanishing_check(parse_coeffs("0,1,0.6"), DiskGrid((0.4, 0.8), 64))
        assert result.verdict == HOLDS
