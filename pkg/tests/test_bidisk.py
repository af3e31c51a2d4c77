from __future__ import annotations

import math

import numpy as np
import pytest

from opnumlab.bidisk import (
    BOUNDED_NOT_COMPACT,
    HILBERT_SCHMIDT,
    UNBOUNDED,
    Diagonal,
    Glued,
    Separated,
    Triangular,
    bergman_norm_growth,
    bilens_trichotomy,
    block_count,
    block_norms,
    chobou_symbol,
    components,
    cross_check,
    direct2d_spectrum,
    from_dict,
    glued_hs_quadrature,
    glued_spectrum,
    half_side_degree,
    is_rudin_instance,
    kernel_norm,
    kernel_ratio,
    kernel_ratio_slope,
    lower_block_bound,
    majo_schedule,
    merge_blocks,
    monomials,
    tensor_spectrum,
    triangular_blocks,
    triangular_ceiling,
    triangular_spectrum,
    upper_block_bound,
)
from opnumlab.config import LabConfig
from opnumlab.errors import BudgetError, DomainError, HypothesisError
from opnumlab.hardy import (
    SingularSpectrum,
    build_matrix,
    dense_singular_values,
    pullback_spectrum,
    singular_values,
)
from opnumlab.rates import APPROACHING_ONE, beta_estimate, fit_decay, rearrangement_oracle
from opnumlab.symbols import Affine, BlaschkeFinite, Lens, Polynomial, Power, boundary_sup, evaluate, halfshift_lens


def _make_config(**overrides) -> LabConfig:
    return LabConfig(threads=1).with_overrides(overrides)


def _dilation_spectrum(r: float, size: int) -> SingularSpectrum:
    matrix = build_matrix(None, Affine(scale=r), size, config=_make_config())
    return singular_values(matrix, size, _make_config())


def test_tensor_spectrum_rearranges_products() -> None:
    merged = tensor_spectrum(
        SingularSpectrum.from_values([1.0, 0.5]), SingularSpectrum.from_values([1.0, 0.3]), 4
    )
    np.testing.assert_allclose(merged.values, [1.0, 0.5, 0.3, 0.15])
    ones = tensor_spectrum(SingularSpectrum.from_values([1.0] * 3), SingularSpectrum.from_values([1.0] * 2), 6)
    np.testing.assert_allclose(ones.values, np.ones(6))
    with pytest.raises(BudgetError):
        tensor_spectrum(SingularSpectrum.from_values([1.0]), SingularSpectrum.from_values([1.0]), 2)


def test_tensor_spectrum_matches_kronecker_products() -> None:
    rng = np.random.default_rng(7)
    for _ in range(5):
        S = rng.standard_normal((4, 4))
        T = rng.standard_normal((3, 3))
        s = SingularSpectrum.from_values(dense_singular_values(S))
        t = SingularSpectrum.from_values(dense_singular_values(T))
        merged = tensor_spectrum(s, t, 12)
        np.testing.assert_allclose(merged.values, dense_singular_values(np.kron(S, T)), atol=1e-12)
        for m in range(1, 5):
            for n in range(1, 4):
                assert merged.values[m * n - 1] >= s.values[m - 1] * t.values[n - 1] * (1.0 - 1e-12)


def test_glued_dilation_uses_bergman_weights() -> None:
    spectrum = glued_spectrum(Affine(scale=0.5), 32, 20, _make_config())
    n = np.arange(20)
    np.testing.assert_allclose(spectrum.values, np.sqrt(n + 1.0) * 0.5**n, atol=1e-12)


def test_direct_truncation_of_glued_dilation() -> None:
    direct = direct2d_spectrum(Glued(Affine(scale=0.5)), 12, 10, _make_config())
    n = np.arange(10)
    np.testing.assert_allclose(direct.values, np.sqrt(n + 1.0) * 0.5**n, atol=1e-12)


def test_direct_truncation_of_diagonal_symbol_matches_the_oracle() -> None:
    symbol = Diagonal((0.5, 0.3))
    spectrum = direct2d_spectrum(symbol, 40, len(monomials(40)), _make_config())
    oracle = rearrangement_oracle(symbol.log_weights, 50)
    assert np.max(np.abs(spectrum.values[:50] - oracle)) < 1e-12
    assert spectrum.truncation == 861


def test_separated_symbol_is_a_tensor_product() -> None:
    direct = direct2d_spectrum(Separated(Affine(scale=0.5), Affine(scale=0.3)), 20, 30, _make_config())
    tensor = tensor_spectrum(_dilation_spectrum(0.5, 32), _dilation_spectrum(0.3, 32), 30)
    np.testing.assert_allclose(direct.values, tensor.values, atol=1e-12)


def test_direct_truncation_respects_the_degree_cap() -> None:
    with pytest.raises(BudgetError):
        direct2d_spectrum(Diagonal((0.5, 0.3)), 41, 10, _make_config())
    with pytest.raises(DomainError):
        components(Diagonal((0.5, 0.3, 0.2)))


def test_half_side_degree() -> None:
    assert half_side_degree(40) == 27
    assert half_side_degree(20) == 13
    assert len(monomials(3)) == 10
    assert monomials(1) == [(0, 0), (1, 0), (0, 1)]


def test_triangular_symbols_require_inner_second_factor() -> None:
    with pytest.raises(HypothesisError):
        Triangular(Affine(scale=0.5), Polynomial((0.3,)), h=Lens(0.5))
    assert is_rudin_instance(BlaschkeFinite((0.0, 0.5)))
    assert not is_rudin_instance(BlaschkeFinite((0.5,)))
    assert is_rudin_instance(Power(3))


def test_two_variable_dictionaries_round_trip() -> None:
    for symbol in (
        Separated(Affine(scale=0.5), Lens(0.5)),
        Glued(Lens(0.25)),
        Triangular(Affine(scale=0.5), Polynomial((0.3,)), Power(2)),
        Diagonal((0.5, 0.3)),
    ):
        assert from_dict(symbol.to_dict()) == symbol
    with pytest.raises(DomainError):
        from_dict({"variant": "twisted"})


def test_triangular_model_with_constant_second_factor() -> None:
    phi, psi = Affine(scale=0.5), Polynomial((0.3,))
    spectrum = triangular_spectrum(phi, psi, None, 16, 30, _make_config())
    oracle = rearrangement_oracle([math.log(2.0), math.log(1.0 / 0.3)], 30)
    np.testing.assert_allclose(spectrum.values, oracle, atol=1e-12)
    assert spectrum.extras["K"] == 24.0
    assert spectrum.extras["ceiling"] == pytest.approx(2.0 * 0.3**25)

    direct = direct2d_spectrum(Triangular(phi, psi), 20, 30, _make_config())
    np.testing.assert_allclose(direct.values, spectrum.values, atol=1e-12)


def test_triangular_model_with_vanishing_second_factor() -> None:
    phi = Affine(scale=0.5)
    spectrum = triangular_spectrum(phi, Polynomial((0.0,)), None, 16, 16, _make_config())
    np.testing.assert_allclose(spectrum.values, _dilation_spectrum(0.5, 16).values, atol=1e-14)
    assert spectrum.extras["K"] == 0.0


def test_triangular_blocks_need_a_contractive_second_factor() -> None:
    with pytest.raises(HypothesisError):
        triangular_blocks(Affine(scale=0.5), Power(1), None, 8, 8, _make_config())
    with pytest.raises(BudgetError):
        triangular_blocks(Affine(scale=0.5), Polynomial((0.5,)), None, 8, 8, _make_config(k_max=10))


def test_block_count() -> None:
    assert block_count(0.5, 1e-12, 64) == 41
    assert block_count(0.0, 1e-12, 64) == 0
    with pytest.raises(BudgetError):
        block_count(0.5, 1e-12, 10)


def test_block_bounds_bracket_the_merged_spectrum() -> None:
    phi, psi = halfshift_lens(0.5), Polynomial((0.2, 0.3))
    spectra, rho, K = triangular_blocks(phi, psi, 4, 32, 32, _make_config())
    assert K == 4
    assert rho == pytest.approx(0.5, abs=1e-12)
    merged = merge_blocks(spectra, triangular_ceiling(phi, rho, K), 32 * 5, 32)

    N, lower = lower_block_bound(spectra, [2, 3, 1], [0, 1, 3])
    assert N == 6
    assert merged.values[N - 1] >= lower - 1e-15

    N, upper = upper_block_bound(spectra, [3, 2, 2, 1, 1], 0.0)
    assert N == 5
    assert merged.values[N - 1] <= upper + 1e-15

    with pytest.raises(DomainError):
        lower_block_bound(spectra, [1, 1], [1, 1])


def test_majorization_schedules() -> None:
    assert majo_schedule("lens", 3) == ([9, 9, 9, 9], 33)
    assert majo_schedule("cusp", 3) == ([3, 3, 3, 3], 9)
    with pytest.raises(DomainError):
        majo_schedule("spiral", 3)


def test_chobou_symbol_touches_the_boundary_only_through_phi() -> None:
    symbol = chobou_symbol(0.5)
    assert boundary_sup(symbol.phi) == pytest.approx(1.0, abs=1e-3)
    assert abs(evaluate(symbol.psi, 1.0)) == 0.0
    assert boundary_sup(symbol.psi) < 1.0


def test_kernel_norms_and_ratios() -> None:
    assert kernel_norm(0.0, 0.0) == 1.0
    assert kernel_norm(0.6, 0.0) == pytest.approx(1.25)
    for theta in (0.4, 0.5, 0.6):
        assert kernel_ratio_slope(theta) == pytest.approx(theta - 0.5, abs=0.02)
    assert kernel_ratio(0.6, 1.0 - 1e-8) > kernel_ratio(0.6, 1.0 - 1e-2)
    with pytest.raises(DomainError):
        kernel_norm(1.0, 0.0)


def test_glued_quadrature_separates_the_regimes() -> None:
    assert glued_hs_quadrature(0.4).converged
    assert not glued_hs_quadrature(0.5).converged


def test_bilens_trichotomy_verdicts() -> None:
    assert bilens_trichotomy(0.4).verdict == HILBERT_SCHMIDT
    assert bilens_trichotomy(0.5).verdict == BOUNDED_NOT_COMPACT
    assert bilens_trichotomy(0.6).verdict == UNBOUNDED


def test_bergman_norms_grow_only_past_one_half() -> None:
    small = bergman_norm_growth(0.4, (32, 64, 128), _make_config())
    large = bergman_norm_growth(0.6, (32, 64, 128), _make_config())
    for growth in (small, large):
        assert all(b >= a - 1e-9 for a, b in zip(growth.norms, growth.norms[1:]))
    assert large.slope > small.slope


def test_block_norms_shrink_with_the_second_factor() -> None:
    spectra, rho, K = triangular_blocks(Affine(scale=0.5), Polynomial((0.3,)), 3, 16, 16, _make_config())
    norms = block_norms(spectra)
    assert len(norms) == K + 1 == 4
    np.testing.assert_allclose(norms, 0.3 ** np.arange(4), atol=1e-12)


def test_glued_lens_spectrum_stabilizes_on_the_boundary_rule() -> None:
    spectrum = glued_spectrum(Lens(0.25), 1024, 512, _make_config())
    assert spectrum.stabilized_count() >= 13
    assert spectrum.values[0] == pytest.approx(1.0, abs=1e-3)
    # Taylor truncations of sizes 64..512 approach 0.3855 from below
    assert 0.385 <= spectrum.values[1] <= 0.39
    assert 0.0 < spectrum.tail_budget < 1e-2
    assert fit_decay(spectrum, "sqrt", _make_config()).r2 >= 0.9


def test_glued_lens_spectrum_agrees_with_the_direct_truncation() -> None:
    config = _make_config()
    spectrum = glued_spectrum(Lens(0.25), 1024, 64, config)
    direct = direct2d_spectrum(Glued(Lens(0.25)), 24, 64, config)
    check = cross_check(spectrum, direct, config=config)
    assert check.compared >= 2
    assert check.agrees
    assert check.to_dict()["agrees"] is True


def test_cross_check_needs_settled_direct_values() -> None:
    spectrum = SingularSpectrum.from_values([1.0, 0.5, 0.25])
    direct = SingularSpectrum(
        values=np.array([1.0, 0.4, 0.25]),
        truncation=3,
        stabilized=np.array([True, False, False]),
        relative_change=np.array([0.0, 0.5, 0.5]),
        certificate=0.5,
    )
    check = cross_check(spectrum, direct, config=_make_config())
    assert check.compared == 1
    assert check.max_deviation == 0.0
    assert check.agrees

    unsettled = SingularSpectrum(
        values=direct.values, truncation=3, stabilized=direct.stabilized,
        relative_change=np.full(3, 0.5), certificate=0.5,
    )
    check = cross_check(spectrum, unsettled, config=_make_config())
    assert check.compared == 0
    assert not check.agrees


def test_chobou_spectrum_fits_and_matches_the_direct_truncation() -> None:
    config = _make_config(boundary_levels=24, spectral_floor=1e-8)
    symbol = chobou_symbol(0.5)
    spectrum = triangular_spectrum(symbol.phi, symbol.psi, None, 64, 200, config)
    assert spectrum.stabilized_count() >= 13
    assert fit_decay(spectrum, "sqrt", config).r2 >= 0.9
    assert beta_estimate(spectrum, 2, config).value <= 0.95

    direct = direct2d_spectrum(symbol, 20, len(monomials(20)), config)
    check = cross_check(spectrum, direct, config=config)
    assert check.compared >= 1
    assert check.agrees


def test_separated_lens_and_dilation_approach_one_with_the_stretch_clause() -> None:
    config = _make_config()
    lens = pullback_spectrum(None, Lens(0.5), 200, config=config)
    tensor = tensor_spectrum(lens, _dilation_spectrum(0.3, 64), 300)
    estimate = beta_estimate(tensor, 2, config.with_overrides({"approach_stretch_clause": True}))
    assert estimate.trend == APPROACHING_ONE
    assert estimate.stretch >= 0.2

    plain = beta_estimate(tensor, 2, config)
    assert plain.trend != APPROACHING_ONE
    assert plain.value < config.approach_final
