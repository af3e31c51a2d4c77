from __future__ import annotations

import json
import math

import numpy as np
import pytest

from opnumlab.config import LabConfig
from opnumlab.errors import BudgetError, DivergenceError, DomainError
from opnumlab.hardy import (
    Basis,
    SingularSpectrum,
    bound_special,
    boundary_image,
    boundary_modulus,
    build_matrix,
    contact_at_real_points,
    dump_matrix,
    eigenvalues,
    fish_bound,
    gunatillake_prediction,
    hs_norm,
    hs_norm_squared,
    operator_norm_bound,
    pullback_spectrum,
    pullback_trace,
    singular_values,
    special_blaschke_zeros,
    special_rate,
    uniform_nodes,
    weyl_check,
    widom_lower_form,
)
from opnumlab.symbols import (
    Affine,
    Compose,
    Cusp,
    HalfShift,
    Identity,
    Lens,
    OuterWeight,
    Polynomial,
    Power,
    evaluate,
    halfshift_lens,
)


def _make_config(**overrides) -> LabConfig:
    return LabConfig(threads=1).with_overrides(overrides)


def test_dilation_matrix_is_diagonal() -> None:
    matrix = build_matrix(None, Affine(scale=0.5), 16, config=_make_config())
    np.testing.assert_allclose(matrix.data, np.diag(0.5 ** np.arange(16)), atol=1e-12)
    assert matrix.tail_budget() < 1e-6


def test_square_map_doubles_indices() -> None:
    matrix = build_matrix(None, Power(2), 8, config=_make_config())
    expected = np.zeros((8, 8))
    for n in range(4):
        expected[2 * n, n] = 1.0
    np.testing.assert_allclose(matrix.data, expected, atol=1e-12)
    assert matrix.column_tails[4:].min() == pytest.approx(1.0)


def test_halfshift_matrix_has_binomial_columns() -> None:
    size = 12
    matrix = build_matrix(None, HalfShift(), size, config=_make_config())
    expected = np.zeros((size, size))
    for n in range(size):
        for k in range(n + 1):
            expected[k, n] = math.comb(n, k) / 2.0**n
    np.testing.assert_allclose(matrix.data, expected, atol=1e-12)


def test_bergman_domain_scales_columns() -> None:
    hardy = build_matrix(None, Affine(scale=0.5), 8, Basis.HARDY, _make_config())
    bergman = build_matrix(None, Affine(scale=0.5), 8, Basis.BERGMAN, _make_config())
    np.testing.assert_allclose(bergman.data, hardy.data * np.sqrt(np.arange(1, 9))[None, :], atol=1e-12)
    assert bergman.domain is Basis.BERGMAN
    assert bergman.codomain is Basis.HARDY


def test_build_matrix_enforces_caps_and_self_maps() -> None:
    with pytest.raises(BudgetError):
        build_matrix(None, Affine(scale=0.5), 64, config=_make_config(n_max=32))
    with pytest.raises(DomainError):
        build_matrix(None, Polynomial((0.5, 0.8)), 8, config=_make_config())


def test_dilation_singular_values() -> None:
    for r in (0.3, 0.5, 0.8):
        matrix = build_matrix(None, Affine(scale=r), 64, config=_make_config())
        spectrum = singular_values(matrix, 64, _make_config())
        assert np.max(np.abs(spectrum.values - r ** np.arange(64))) < 1e-12
        assert np.all(np.diff(spectrum.values) <= 0.0)


def test_singular_values_certificate_marks_the_compared_prefix() -> None:
    matrix = build_matrix(None, Affine(scale=0.5), 32, config=_make_config())
    spectrum = singular_values(matrix, 32, _make_config())
    assert spectrum.stabilized[:16].all()
    assert not spectrum.stabilized[16:].any()
    assert spectrum.stabilized_count() == 16
    with pytest.raises(DomainError):
        singular_values(matrix, 33)


def test_halfshift_norm_respects_the_norm_bound() -> None:
    matrix = build_matrix(None, HalfShift(), 256, config=_make_config())
    spectrum = singular_values(matrix, 8, _make_config())
    assert spectrum.values[0] <= operator_norm_bound(0.5) + 1e-8
    assert operator_norm_bound(0.5) == pytest.approx(math.sqrt(3.0))
    assert operator_norm_bound(0.0) == 1.0


def test_truncation_doubling_stabilizes_the_leading_values() -> None:
    phi = halfshift_lens(0.5)
    coarse = singular_values(build_matrix(None, phi, 256, config=_make_config()), 20, _make_config())
    fine = singular_values(build_matrix(None, phi, 512, config=_make_config()), 20, _make_config())
    # Compressions can only grow the singular values.
    assert np.all(fine.values >= coarse.values - 1e-12)
    assert fine.values[0] == pytest.approx(coarse.values[0], rel=1e-3)
    assert fine.values[0] <= math.sqrt(3.0) + 1e-8


def test_isometric_symbol_is_not_compact() -> None:
    for size in (32, 64):
        matrix = build_matrix(None, Power(2), size, config=_make_config())
        spectrum = singular_values(matrix, 8, _make_config())
        np.testing.assert_allclose(spectrum.values, np.ones(8), atol=1e-12)


def test_weighted_isometric_symbol_is_not_compact() -> None:
    # Columns w z^(2n) have disjoint supports and norm ||w||_2.
    weight = Polynomial((0.5, 0.25))
    norm = math.sqrt(0.5**2 + 0.25**2)
    for size in (32, 64):
        spectrum = singular_values(build_matrix(weight, Power(2), size, config=_make_config()), 8, _make_config())
        np.testing.assert_allclose(spectrum.values, np.full(8, norm), atol=1e-10)
        assert spectrum.values[-1] >= 0.5 * norm


def test_column_tails_bound_the_discarded_mass() -> None:
    phi = Lens(0.5)
    small = build_matrix(None, phi, 32, config=_make_config())
    large = build_matrix(None, phi, 128, config=_make_config())
    kept = small.column_norms()
    longer = large.column_norms()[:32]
    assert np.all(kept <= longer + 1e-12)
    assert np.all(longer <= kept + small.column_tails + 1e-12)
    # Lens images spread past the truncation.
    assert small.column_tails[-1] > 1e-3
    assert np.all(np.isfinite(small.column_tails))


def test_contractive_polynomial_symbol_has_geometric_floor() -> None:
    phi = Polynomial((0.1, 0.5))
    small = singular_values(build_matrix(None, phi, 48, config=_make_config()), 10, _make_config())
    large = singular_values(build_matrix(None, phi, 96, config=_make_config()), 10, _make_config())
    assert large.values[9] ** 0.1 == pytest.approx(small.values[9] ** 0.1, abs=1e-6)
    assert 0.0 < large.values[9] ** 0.1 < 1.0


def test_hilbert_schmidt_norm_of_dilation() -> None:
    for r in (0.3, 0.5, 0.9):
        assert hs_norm(None, Affine(scale=r)) == pytest.approx(1.0 / math.sqrt(1.0 - r * r), rel=1e-10)


def test_column_sums_match_the_boundary_integral() -> None:
    weight = Polynomial((0.1,))
    phi = Affine(scale=0.9)
    matrix = build_matrix(weight, phi, 256, config=_make_config())
    integral = hs_norm_squared(weight, phi)
    assert integral.converged
    assert matrix.column_norm_partial_sums()[-1] == pytest.approx(integral.value, abs=1e-6)
    assert integral.value == pytest.approx(0.1 / 1.9, rel=1e-10)


def test_hilbert_schmidt_norm_diverges_for_inner_symbols() -> None:
    with pytest.raises(DivergenceError):
        hs_norm(None, Power(2))


def test_eigenvalues_of_dilation_and_affine_maps() -> None:
    eigs = eigenvalues(build_matrix(None, Affine(scale=0.5), 32, config=_make_config()), 6)
    np.testing.assert_allclose(np.abs(eigs), 0.5 ** np.arange(6), atol=1e-10)

    matrix = build_matrix(None, Affine(scale=0.5, offset=0.25), 32, config=_make_config())
    eigs = eigenvalues(matrix, 6)
    np.testing.assert_allclose(np.abs(eigs), 0.5 ** np.arange(6), atol=1e-8)
    predicted = gunatillake_prediction(None, Affine(scale=0.5, offset=0.25), 6)
    np.testing.assert_allclose(np.abs(predicted), 0.5 ** np.arange(6), atol=1e-8)


def test_weighted_eigenvalues_follow_the_fixed_point() -> None:
    weight = Polynomial((0.3, 1.0))
    phi = Affine(scale=0.5)
    matrix = build_matrix(weight, phi, 48, config=_make_config())
    eigs = eigenvalues(matrix, 8)
    predicted = gunatillake_prediction(weight, phi, 8)
    np.testing.assert_allclose(np.abs(predicted), 0.3 * 0.5 ** np.arange(8), atol=1e-12)
    assert np.max(np.abs(np.abs(eigs) - np.abs(predicted))) < 1e-6
    spectrum = singular_values(matrix, 48, _make_config())
    assert weyl_check(spectrum, eigenvalues(matrix, 48))


def test_weyl_check_rejects_inflated_eigenvalues() -> None:
    spectrum = SingularSpectrum.from_values([1.0, 0.5, 0.25])
    assert weyl_check(spectrum, np.array([1.0, 0.5, 0.25]))
    assert not weyl_check(spectrum, np.array([1.0, 0.9, 0.8]))


def test_special_bound_shapes() -> None:
    assert special_rate(1.0) == pytest.approx(math.log(math.sqrt(17.0) / 4.0))
    assert bound_special(10, 1, 1.0, 1.0, 1.0) == pytest.approx(math.exp(-10 * special_rate(1.0)))
    assert bound_special(10, 1, 1.0, math.inf, 1.0) == pytest.approx(0.7386, abs=1e-4)
    assert widom_lower_form(0.5, 1.0, 0.5, 1) == pytest.approx(0.35355, abs=1e-5)
    with pytest.raises(DomainError):
        special_rate(0.5)


def test_special_blaschke_zeros_and_fish_bound() -> None:
    assert special_blaschke_zeros(2, 3) == (0.0, 0.0, 0.5, 0.5, 0.75, 0.75)
    phi = halfshift_lens(0.5)
    few = fish_bound(None, phi, special_blaschke_zeros(1, 2))
    many = fish_bound(None, phi, special_blaschke_zeros(2, 2))
    assert 0.0 < many <= few <= 1.0


def test_dump_matrix_writes_column_major_bytes(tmp_path) -> None:
    matrix = build_matrix(None, HalfShift(), 6, config=_make_config())
    binary, sidecar = dump_matrix(matrix, tmp_path / "halfshift.bin")
    raw = np.fromfile(binary, dtype="<c16")
    assert raw.size == 36
    np.testing.assert_array_equal(raw.reshape(6, 6).T, matrix.data)
    payload = json.loads(sidecar.read_text(encoding="utf-8"))
    assert payload["N"] == 6
    assert payload["order"] == "column-major"
    assert payload["symbol"]["phi"] == {"kind": "halfshift"}


def test_spectrum_csv_lists_values(tmp_path) -> None:
    spectrum = SingularSpectrum.from_values([0.25, 1.0, 0.5])
    path = spectrum.to_csv(tmp_path / "spectrum.csv")
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "n,a_n,stabilized,tail_budget"
    assert lines[1] == "1,1.0,true,0.0"
    assert len(lines) == 4


def test_contact_at_real_points_selects_the_boundary_rule() -> None:
    assert contact_at_real_points(Lens(0.5))
    assert contact_at_real_points(halfshift_lens(0.5))
    assert contact_at_real_points(Cusp())
    assert contact_at_real_points(HalfShift())
    assert not contact_at_real_points(Affine(scale=0.5))
    assert not contact_at_real_points(Power(2))
    assert not contact_at_real_points(Identity())
    with pytest.raises(DomainError):
        pullback_spectrum(None, Affine(scale=0.5), 4, config=_make_config())


def test_boundary_image_matches_direct_evaluation() -> None:
    nodes = uniform_nodes(256)
    points = np.exp(1j * nodes.angle)
    for symbol in (Lens(0.5), Lens(0.25), halfshift_lens(0.5), Cusp(), HalfShift()):
        image = boundary_image(symbol, nodes)
        direct = np.asarray(evaluate(symbol, points))
        np.testing.assert_allclose(image.value, direct, atol=1e-10)
        np.testing.assert_allclose(image.to_one, 1.0 - direct, atol=1e-10)
        np.testing.assert_allclose(image.to_minus_one, 1.0 + direct, atol=1e-10)
        np.testing.assert_allclose(image.defect(), 1.0 - np.abs(direct) ** 2, atol=1e-9)


def test_outer_weight_modulus_vanishes_at_the_contact() -> None:
    nodes = uniform_nodes(256)
    weight = Compose(inner=halfshift_lens(0.5), outer=OuterWeight(0.5))
    modulus = boundary_modulus(weight, nodes)
    direct = np.abs(np.asarray(evaluate(weight, np.exp(1j * nodes.angle))))
    np.testing.assert_allclose(modulus, direct, atol=1e-12)
    assert modulus[np.argmin(np.abs(nodes.angle))] < 0.02
    assert np.all(modulus < 1.0)


def test_pullback_spectrum_carries_the_hilbert_schmidt_norm() -> None:
    config = _make_config(boundary_levels=24)
    spectrum = pullback_spectrum(None, Lens(0.5), 10_000, config=config)
    trace = pullback_trace(None, Lens(0.5), config=config)
    assert trace.converged
    assert float(np.sum(spectrum.values**2)) == pytest.approx(hs_norm(None, Lens(0.5)) ** 2, rel=1e-4)
    assert trace.value == pytest.approx(hs_norm(None, Lens(0.5)) ** 2, rel=1e-8)
    assert spectrum.truncation == len(spectrum.values)


def test_pullback_spectrum_dominates_the_taylor_truncation() -> None:
    config = _make_config()
    pullback = pullback_spectrum(None, Lens(0.5), 40, config=config)
    taylor = singular_values(build_matrix(None, Lens(0.5), 512, config=config), 3, config)
    # Compressions can only lower the singular values.
    assert np.all(pullback.values[:3] >= taylor.values * (1.0 - 1e-6))
    assert np.all(taylor.values >= 0.95 * pullback.values[:3])
    assert pullback.stabilized_count() >= 10
    assert np.all(np.diff(pullback.values) <= 0.0)
    assert 0.0 < pullback.tail_budget < 1e-2
