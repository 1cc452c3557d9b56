"""商函数与参考函数库测试"""
import numpy as np
import pytest

from core.exceptions import ConfigError, DomainError
from core.quotients import (
    CONVEX,
    NOT_STARLIKE,
    STARLIKE,
    accuracy_radius,
    halfplane,
    identity,
    koebe,
    mobius,
    monomial,
    parse_coeffs,
    quadratic,
    quotient_grid,
    quotient_series,
    quotient_triple,
    reference_zoo,
    resolve_function,
    resolve_reference,
)


def random_disk_points(n=200, r_max=0.9, seed=3):
    rng = np.random.default_rng(seed)
    r = r_max * np.sqrt(rng.uniform(0, 1, n))
    return r * np.exp(2j * np.pi * rng.uniform(0, 1, n))


def test_koebe_at_one_half():
    q = quotient_triple(koebe().taylor, 0.5)
    assert q.u == pytest.approx(3.0, abs=1e-10)
    assert q.v == pytest.approx(13 / 3, abs=1e-10)
    assert q.w == pytest.approx(-8 / 3, abs=1e-10)
    assert q.accurate


def test_quadratic_by_coefficients():
    f = parse_coeffs("0,1,0.5")
    q = quotient_triple(f, 0.5)
    assert q.u == pytest.approx(1.2, abs=1e-12)
    assert q.v == pytest.approx(1 + 0.5 / 1.5, abs=1e-12)


def test_origin_limits():
    q = quotient_triple(koebe().taylor, 1e-10)
    assert (q.u, q.v, q.w) == (1, 1, 0)


@pytest.mark.parametrize("z", [1, -1, 0.6 + 0.8j, 2j])
def test_outside_disk_rejected(z):
    with pytest.raises(DomainError):
        quotient_triple(koebe().taylor, z)
    with pytest.raises(DomainError):
        quotient_grid(koebe().taylor, [0.1, z])


@pytest.mark.parametrize("ref", [koebe(), halfplane(), quadratic(0.3), quadratic(0.45 + 0.1j)],
                         ids=lambda r: r.id)
def test_series_matches_closed_forms(ref):
    z = random_disk_points()
    series = quotient_grid(ref.taylor, z, method="series")
    exact = quotient_grid(ref.taylor, z, method="exact")
    np.testing.assert_allclose(series.u, exact.u, rtol=1e-10, atol=1e-10)
    np.testing.assert_allclose(series.v, exact.v, rtol=1e-10, atol=1e-10)
    np.testing.assert_allclose(series.w, exact.w, rtol=1e-10, atol=1e-9)


def test_koebe_schwarzian_closed_form():
    z = random_disk_points(seed=11)
    got = quotient_grid(koebe().taylor, z, method="series").w
    np.testing.assert_allclose(got, -6 * z * z / (1 - z * z) ** 2, rtol=1e-10, atol=1e-9)


@pytest.mark.parametrize("c", [0.5, 0.9, -0.9, 0.9j, 1.0, -0.3 + 0.4j])
def test_mobius_schwarzian_vanishes(c):
    _, _, qsd = quotient_series(mobius(c).taylor)
    assert np.all(np.abs(qsd.coeffs) <= 1e-11)


@pytest.mark.parametrize("order", [64, 400])
def test_mobius_schwarzian_vanishes_at_every_order(order):
    _, _, qsd = quotient_series(mobius(0.9, order=order).taylor)
    assert np.all(np.abs(qsd.coeffs) <= 1e-11)


def test_truncated_expansion_drops_undetermined_top_term():
    f = koebe(64).taylor
    qst, qcv, qsd = quotient_series(f)
    assert qst.coeffs[64] == qcv.coeffs[64] == qsd.coeffs[64] == 0
    # Koebe: Q_SD = −6 Σ k z^{2k}，到 N−1 阶都是精确值
    want = np.zeros(65)
    want[2:64:2] = -6 * np.arange(1, 32)
    np.testing.assert_allclose(qsd.coeffs, want, atol=1e-9)


def test_polynomial_keeps_top_term():
    _, _, qsd = quotient_series(parse_coeffs("0,1,0,0.2"))
    assert qsd.coeffs[64] != 0


@pytest.mark.parametrize("ref", [identity(), monomial(3, 0.2 - 0.1j), mobius(0.5)], ids=lambda r: r.id)
def test_more_zoo_closed_forms(ref):
    z = random_disk_points(seed=5)
    series = quotient_grid(ref.taylor, z, method="series")
    exact = quotient_grid(ref.taylor, z, method="exact")
    for got, want in ((series.u, exact.u), (series.v, exact.v), (series.w, exact.w)):
        np.testing.assert_allclose(got, want, rtol=1e-10, atol=1e-10)


def test_direct_matches_exact_for_polynomials():
    z = random_disk_points(r_max=0.99)
    f = monomial(3, 0.2 - 0.1j).taylor
    direct = quotient_grid(f, z, method="direct")
    exact = quotient_grid(f, z, method="exact")
    for got, want in ((direct.u, exact.u), (direct.v, exact.v), (direct.w, exact.w)):
        np.testing.assert_allclose(got, want, rtol=1e-11, atol=1e-12)


def test_auto_uses_direct_beyond_accuracy_radius():
    f = parse_coeffs("0,1,0.3,0,0.1")
    z = np.array([0.3, 0.999j, -0.9995])
    auto = quotient_grid(f, z)
    direct = quotient_grid(f, z, method="direct")
    np.testing.assert_allclose(auto.u, direct.u, atol=1e-9)
    np.testing.assert_allclose(auto.w, direct.w, atol=1e-9)


def test_exact_method_needs_closed_forms():
    with pytest.raises(ConfigError):
        quotient_grid(parse_coeffs("0,1,0.2"), [0.1], method="exact")
    with pytest.raises(ConfigError):
        quotient_grid(parse_coeffs("0,1,0.2"), [0.1], method="taylor")


def test_grid_origin_uses_limits():
    g = quotient_grid(parse_coeffs("0,1,0.2"), [0j, 0.5], method="direct")
    assert (g.u[0], g.v[0], g.w[0]) == (1, 1, 0)


def test_accuracy_radius_bounds():
    _, qcv, _ = quotient_series(koebe().taylor)
    r = accuracy_radius(qcv)
    assert 0.9 < r <= 0.999
    _, qcv, _ = quotient_series(parse_coeffs("0,1"))
    assert accuracy_radius(qcv) == 0.999


def test_series_cache_reused():
    f = quadratic(0.2).taylor
    assert quotient_series(f)[0] is quotient_series(quadratic(0.2).taylor)[0]


class TestZoo:
    def test_members(self):
        ids = [ref.id for ref in reference_zoo()]
        assert ids[:3] == ["identity", "koebe", "halfplane"]
        assert "quad:0.6" in ids and "mono:3:0.5" in ids
        assert len(ids) == 10

    @pytest.mark.parametrize("a, status", [(0.2, CONVEX), (0.25, CONVEX), (0.4, STARLIKE), (0.6, NOT_STARLIKE)])
    def test_quadratic_status(self, a, status):
        assert quadratic(a).known_status == status

    def test_truncation_flags(self):
        assert koebe().taylor.truncated
        assert halfplane().taylor.truncated
        assert not quadratic(0.2).taylor.truncated
        assert not mobius(0).taylor.truncated

    def test_monomial_needs_degree_two(self):
        with pytest.raises(ConfigError):
            monomial(1, 0.5)


class TestResolve:
    @pytest.mark.parametrize("spec, label", [
        ("identity", "identity"),
        ("Koebe", "koebe"),
        ("halfplane", "halfplane"),
        ("quad:0.6", "quad:0.6"),
        ("mono:3:0.1", "mono:3:0.1"),
        ("mobius:0.5", "mobius:0.5"),
    ])
    def test_names(self, spec, label):
        assert resolve_function(spec).label == label

    @pytest.mark.parametrize("spec", ["sine", "quad:", "quad:x", "mono:x:0.1", "mono:1:0.1"])
    def test_unknown_names(self, spec):
        with pytest.raises(ConfigError):
            resolve_reference(spec)

    def test_complex_coefficients(self):
        f = parse_coeffs("0, 1, 0.5+0.1i")
        assert f.series.coeffs[2] == 0.5 + 0.1j

    @pytest.mark.parametrize("text", ["0,2", "1,1", "0", "0,1,abc", "0,,1"])
    def test_bad_coefficient_text(self, text):
        with pytest.raises(ConfigError):
            parse_coeffs(text)
