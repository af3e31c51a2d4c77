from __future__ import annotations

import math

import numpy as np
import pytest

from opnumlab.errors import BranchCutError, DomainError
from opnumlab.symbols import (
    CUSP_CONSTANT,
    Affine,
    BlaschkeFinite,
    Compose,
    Cusp,
    HalfShift,
    Identity,
    Lens,
    OuterWeight,
    Polynomial,
    ScalarMultiple,
    TruncatedSeries,
    blaschke_radii,
    contact_constant,
    cusp_chain,
    cusp_contact_asymptote,
    disk_automorphism,
    evaluate,
    from_dict,
    halfshift_lens,
    interpolating_zeros,
    kappa_bound,
    lens_boundary_image,
    pseudo_diameter,
    pseudo_hyperbolic,
    pullback_window_mass,
    taylor,
)
from opnumlab.symbols.evaluate import principal_power
from opnumlab.symbols.geometry import boundary_points


def _make_grid(max_radius: float = 0.99, radii: int = 25, angles: int = 64) -> np.ndarray:
    r = np.linspace(0.0, max_radius, radii)
    t = 2.0 * math.pi * np.arange(angles) / angles
    return (r[:, None] * np.exp(1j * t[None, :])).ravel()


def _make_right_half_grid() -> np.ndarray:
    grid = _make_grid()
    return grid[grid.real >= 0.0]


def test_lens_fixes_origin_and_theta_one_is_identity() -> None:
    assert abs(evaluate(Lens(0.5), 0.0)) < 1e-15
    z = 0.3 + 0.4j
    assert abs(evaluate(Lens(1.0), z) - z) < 1e-14


def test_lens_maps_compose_as_a_semigroup() -> None:
    grid = _make_grid(0.95, 10, 10)
    for first, second in ((0.5, 0.5), (0.3, 0.8), (0.9, 0.6)):
        composed = evaluate(Compose(inner=Lens(first), outer=Lens(second)), grid)
        direct = evaluate(Lens(first * second), grid)
        assert np.max(np.abs(composed - direct)) < 1e-10


def test_lens_lower_estimate_on_right_half_disk() -> None:
    grid = _make_right_half_grid()
    for theta in (0.25, 0.5, 0.75):
        delta = math.cos(0.5 * math.pi * theta)
        defect = 1.0 - np.abs(evaluate(Lens(theta), grid)) ** 2
        bound = 0.5 * delta * np.abs(1.0 - grid) ** theta
        assert np.all(defect >= bound - 1e-12)


def test_outer_weight_decays_at_one() -> None:
    grid = _make_right_half_grid()
    grid = grid[np.abs(1.0 - grid) > 1e-9]
    theta = 0.5
    delta = math.cos(0.5 * math.pi * theta)
    values = np.abs(evaluate(OuterWeight(theta), grid))
    assert np.all(values <= np.exp(-delta / np.abs(1.0 - grid) ** theta) + 1e-12)
    assert evaluate(OuterWeight(theta), 1.0) == 0


def test_cusp_fixes_origin() -> None:
    chain = cusp_chain(np.array([0j]))
    assert abs(chain["chi0"][0] - (math.sqrt(2.0) - 1.0)) < 1e-12
    assert abs(evaluate(Cusp(), 0.0)) < 1e-12
    assert CUSP_CONSTANT == pytest.approx(1.5611, abs=1e-4)


def test_cusp_contact_is_logarithmic() -> None:
    r = 1.0 - 1e-6
    gap = 1.0 - evaluate(Cusp(), r).real
    assert gap == pytest.approx(cusp_contact_asymptote(r), rel=1e-4)


def test_evaluation_rejects_points_outside_the_disk() -> None:
    with pytest.raises(DomainError):
        evaluate(Lens(0.5), 1.5)
    with pytest.raises(DomainError):
        Lens(0.0)
    with pytest.raises(DomainError):
        Affine(scale=0.8, offset=0.5)
    with pytest.raises(DomainError):
        BlaschkeFinite((1.0,))


def test_principal_power_refuses_the_branch_cut() -> None:
    with pytest.raises(BranchCutError):
        principal_power(np.array([-1.0 + 0j]), 0.5)
    assert principal_power(np.array([0j]), 0.5)[0] == 0


def test_blaschke_factor_modulus() -> None:
    assert abs(evaluate(BlaschkeFinite((0.5,)), 0.0)) == pytest.approx(0.5)
    t = boundary_points(64)
    values = evaluate(BlaschkeFinite((0.5, 0.2 + 0.3j, 0.0)), np.exp(1j * t))
    assert np.max(np.abs(np.abs(values) - 1.0)) < 1e-12


def test_symbol_dictionaries_round_trip() -> None:
    spec = Compose(
        inner=ScalarMultiple(0.5, BlaschkeFinite((0.25, 0.5j))),
        outer=halfshift_lens(0.5),
    )
    assert from_dict(spec.to_dict()) == spec
    assert from_dict(Affine(scale=0.5, offset=0.25).to_dict()) == Affine(scale=0.5, offset=0.25)
    with pytest.raises(DomainError):
        from_dict({"kind": "unknown"})


def test_taylor_of_polynomial_maps() -> None:
    series = taylor(Affine(scale=0.5), 3)
    np.testing.assert_allclose(series.coefficients, [0.0, 0.5, 0.0, 0.0], atol=1e-12)
    series = taylor(HalfShift(), 2)
    np.testing.assert_allclose(series.coefficients, [0.5, 0.5, 0.0], atol=1e-12)


def test_taylor_of_lens_matches_series_arithmetic() -> None:
    degree = 8
    z = TruncatedSeries.variable(degree)
    w = ((1 - z) / (1 + z)) ** 0.5
    oracle = (1 - w) / (1 + w)
    series = taylor(Lens(0.5), degree, radius=0.9)
    np.testing.assert_allclose(series.coefficients, oracle.c, atol=1e-8)


def test_taylor_series_reproduces_the_symbol_inside_the_sampling_circle() -> None:
    spec = halfshift_lens(0.5)
    series = taylor(spec, 32)
    points = 0.5 * series.radius * np.exp(2j * math.pi * np.arange(16) / 16)
    error = np.max(np.abs(series(points) - evaluate(spec, points)))
    assert error <= series.tail_error + 1e-12


def test_taylor_tail_error_decreases_with_the_degree() -> None:
    points = 0.9 * np.exp(2j * math.pi * np.arange(32) / 32)
    tails = []
    for degree in (8, 16, 32):
        series = taylor(Lens(0.5), degree, radius=0.9)
        assert math.isfinite(series.tail_error)
        error = np.max(np.abs(series(points) - evaluate(Lens(0.5), points)))
        assert error <= series.tail_error + 1e-12
        tails.append(series.tail_error)
    assert tails[0] > tails[1] > tails[2]


def test_lens_boundary_image_keeps_the_contact_distance() -> None:
    offset = np.array([1e-14, 1e-8, 1e-3, 0.5])
    for upper in (True, False):
        value, to_one, _ = lens_boundary_image(0.5, offset, np.full(4, upper), np.zeros(4, dtype=bool))
        angle = offset if upper else -offset
        np.testing.assert_allclose(value[2:], evaluate(Lens(0.5), np.exp(1j * angle[2:])), atol=1e-12)
        # 1 - lens ~ 2 tan(t/2)^theta near the contact
        np.testing.assert_allclose(np.abs(to_one[:2]), 2.0 * np.tan(0.5 * offset[:2]) ** 0.5, rtol=1e-3)
    value, _, to_minus_one = lens_boundary_image(0.5, offset, np.ones(4, dtype=bool), np.ones(4, dtype=bool))
    np.testing.assert_allclose(value[2:], evaluate(Lens(0.5), np.exp(1j * (math.pi - offset[2:]))), atol=1e-12)
    np.testing.assert_allclose(np.abs(to_minus_one[:2]), 2.0 * np.tan(0.5 * offset[:2]) ** 0.5, rtol=1e-3)


def test_truncated_series_identities() -> None:
    z = TruncatedSeries.variable(10)
    f = 1 + 0.5 * z - 0.25 * z * z
    np.testing.assert_allclose(f.log().exp().c, f.c, atol=1e-13)
    np.testing.assert_allclose(((f**0.5) ** 2).c, f.c, atol=1e-13)
    np.testing.assert_allclose(((f / f)).c, TruncatedSeries.constant(1.0, 10).c, atol=1e-13)
    with pytest.raises(DomainError):
        z.log()


def test_pseudo_hyperbolic_distance() -> None:
    assert pseudo_hyperbolic(0.3 + 0.4j, 0.0) == pytest.approx(0.5)
    assert pseudo_hyperbolic(0.9, 0.7) >= 0.5
    assert kappa_bound(4.0) == pytest.approx(4.0 / math.sqrt(17.0))
    assert kappa_bound(1.0) == pytest.approx(1.0 / math.sqrt(2.0))


def test_pseudo_hyperbolic_distance_is_mobius_invariant() -> None:
    rng = np.random.default_rng(1)
    for _ in range(20):
        a, b, c = (0.9 * math.sqrt(rng.random()) * np.exp(2j * math.pi * rng.random()) for _ in range(3))
        moved = pseudo_hyperbolic(disk_automorphism(c, a), disk_automorphism(c, b))
        assert moved == pytest.approx(pseudo_hyperbolic(a, b), abs=1e-12)


def test_pseudo_diameter_of_dilation() -> None:
    assert pseudo_diameter(Affine(scale=0.5), 0.9) == pytest.approx(0.9 / (1.0 + 0.2025), abs=1e-9)
    assert pseudo_diameter(Identity(), 0.5) == pytest.approx(pseudo_diameter(Affine(scale=1.0), 0.5))
    assert pseudo_diameter(Lens(0.5), 0.99, 2048) >= abs(evaluate(Lens(0.5), 0.99))


def test_pullback_window_mass() -> None:
    expected = (2.0 / math.pi) * math.asin(0.25)
    assert pullback_window_mass(Identity(), 0.5, 1 << 16) == pytest.approx(expected, abs=1e-4)
    assert pullback_window_mass(Affine(scale=0.5), 0.4) == 0.0
    with pytest.raises(DomainError):
        pullback_window_mass(Identity(), 0.5, 100)


def test_lens_window_mass_scales_like_h_to_the_one_over_theta() -> None:
    h = 2.0 ** -np.arange(3, 8, dtype=float)
    mass = [pullback_window_mass(Lens(0.5), float(value), 1 << 22) for value in h]
    slope = np.polyfit(np.log(h), np.log(mass), 1)[0]
    assert slope == pytest.approx(2.0, rel=0.15)


def test_contact_constant_is_finite_for_halfshift_lens() -> None:
    phi = halfshift_lens(0.5)
    coarse = contact_constant(phi, 256, 30)
    fine = contact_constant(phi, 512, 40)
    assert 1.0 <= coarse < 100.0
    assert fine == pytest.approx(coarse, rel=0.05)


def test_weight_composed_with_halfshift_lens_decays_at_one() -> None:
    theta = 0.5
    delta = math.cos(0.5 * math.pi * theta)
    phi = halfshift_lens(theta)
    psi = Compose(inner=phi, outer=OuterWeight(theta))
    grid = _make_grid()
    grid = grid[np.abs(1.0 - grid) > 1e-9]
    values = np.abs(evaluate(psi, grid))
    assert np.all(values <= np.exp(-(delta**2) / np.abs(1.0 - grid) ** (theta**2)) + 1e-12)


def test_blaschke_circles_follow_the_zero_gaps() -> None:
    circles = blaschke_radii(0.5, 0.5, 6)
    ratios = [circle.rho / 0.5**circle.level for circle in circles]
    assert max(ratios) - min(ratios) < 1e-12
    assert all(circle.case == 2 for circle in circles)

    zeros = interpolating_zeros(0.5, 0.5, 40)
    product = BlaschkeFinite(tuple(zeros))
    angles = boundary_points(4096)
    for circle in circles:
        minimum = np.min(np.abs(evaluate(product, circle.radius * np.exp(1j * angles))))
        assert minimum >= circle.delta


def test_blaschke_radii_validate_parameters() -> None:
    with pytest.raises(DomainError):
        blaschke_radii(1.5, 0.5, 3)
    with pytest.raises(DomainError):
        blaschke_radii(0.5, 0.5, 3, eps=[0.5])
    assert Polynomial((0.3, 1.0)).is_self_map() is False
