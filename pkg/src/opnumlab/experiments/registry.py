"""Registry of reproducible experiments.

Each experiment pins its symbol constructions in code and exposes only
numeric parameters with defaults; ``opnum-lab show <id>`` lists them.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Sequence

import numpy as np
from scipy import stats

from ..bidisk import (
    Diagonal,
    bergman_norm_growth,
    bilens_trichotomy,
    block_norms,
    Glued,
    chobou_symbol,
    cross_check,
    cusp_blaschke_symbol,
    direct2d_spectrum,
    glued_spectrum,
    kernel_ratio,
    lens_blaschke_symbol,
    majo_schedule,
    merge_blocks,
    monomials,
    tensor_spectrum,
    triangular_blocks,
    triangular_ceiling,
    upper_block_bound,
)
from ..bidisk.kernels import KERNEL_DEPTHS
from ..capacity import green_capacity_disk, tau_polydisk
from ..config import LabConfig
from ..errors import ConfigError, FitError
from ..hardy import (
    Basis,
    SingularSpectrum,
    build_matrix,
    dense_singular_values,
    eigenvalues,
    gunatillake_prediction,
    singular_values,
    weyl_check,
)
from ..rates import (
    Level,
    best_fit,
    beta_estimate,
    chobou_budget,
    compare_families,
    count_lattice,
    cusp_lower_levels,
    estim_inf_bound,
    fit_decay,
    lens_lower_levels,
    rearrangement_oracle,
)
from ..symbols import (
    Affine,
    BlaschkeFinite,
    Lens,
    Polynomial,
    SymbolSpec,
    blaschke_radii,
    boundary_sup,
    contact_constant,
    evaluate,
    interpolating_zeros,
)
from ..symbols.geometry import boundary_points
from .output import RunResult

logger = logging.getLogger(__name__)

ExperimentFunc = Callable[[Dict[str, Any], LabConfig], RunResult]


@dataclass(slots=True)
class Experiment:
    id: str
    description: str
    func: ExperimentFunc
    defaults: Dict[str, Any] = field(default_factory=dict)


REGISTRY: Dict[str, Experiment] = {}


def experiment(experiment_id: str, description: str, **defaults: Any) -> Callable[[ExperimentFunc], ExperimentFunc]:
    def register(func: ExperimentFunc) -> ExperimentFunc:
        REGISTRY[experiment_id] = Experiment(experiment_id, description, func, dict(defaults))
        return func

    return register


def get_experiment(experiment_id: str) -> Experiment:
    try:
        return REGISTRY[experiment_id]
    except KeyError:
        raise ConfigError(f"Unknown experiment {experiment_id!r}", known=sorted(REGISTRY)) from None


def _floats(value: Any) -> List[float]:
    if isinstance(value, (list, tuple)):
        return [float(item) for item in value]
    return [float(value)]


@experiment("diag-seminal", "a_n(C_{rz}) = r^(n-1) and the exponential fit beta = log(1/r)", r=0.5, N=64)
def _diag_seminal(params: Dict[str, Any], config: LabConfig) -> RunResult:
    r, N = float(params["r"]), int(params["N"])
    spectrum = singular_values(build_matrix(None, Affine(scale=r), N, Basis.HARDY, config), N, config)
    exact = r ** np.arange(N, dtype=float)
    fit = fit_decay(spectrum, "exp", config)
    result = RunResult()
    result.add_spectrum("a_n", spectrum)
    result.add_values("r^(n-1)", exact)
    result.summary = {
        "fit": fit,
        "expected_beta": math.log(1.0 / r),
        "max_error": float(np.max(np.abs(spectrum.values - exact))),
        "certificate": spectrum.certificate,
        "tail_budget": spectrum.tail_budget,
    }
    return result


@experiment("tensor-lemma", "Tensor spectra against Kronecker SVDs and a_mn >= a_m a_n", pairs=20, seed=0)
def _tensor_lemma(params: Dict[str, Any], config: LabConfig) -> RunResult:
    rng = np.random.default_rng(int(params["seed"]))
    errors: List[float] = []
    holds = True
    for _ in range(int(params["pairs"])):
        S = rng.standard_normal((4, 4))
        T = rng.standard_normal((3, 3))
        s = SingularSpectrum.from_values(dense_singular_values(S))
        t = SingularSpectrum.from_values(dense_singular_values(T))
        merged = tensor_spectrum(s, t, 12)
        kron = dense_singular_values(np.kron(S, T))
        errors.append(float(np.max(np.abs(merged.values - kron))))
        for m in range(1, 5):
            for n in range(1, 4):
                if merged.values[m * n - 1] < s.values[m - 1] * t.values[n - 1] * (1.0 - 1e-12):
                    holds = False
    result = RunResult()
    result.add_values("max_error", errors)
    result.summary = {"max_error": max(errors), "product_inequality": holds}
    return result


@experiment(
    "bilens-trichotomy",
    "Hilbert-Schmidt, bounded or unbounded glued lens operators",
    thetas=[0.4, 0.5, 0.6],
    sizes=[64, 128, 256, 512],
)
def _bilens_trichotomy(params: Dict[str, Any], config: LabConfig) -> RunResult:
    sizes = [int(s) for s in _floats(params["sizes"])]
    result = RunResult()
    verdicts = {}
    for theta in _floats(params["thetas"]):
        label = f"theta={theta!r}"
        evidence = bilens_trichotomy(theta, config)
        growth = bergman_norm_growth(theta, sizes, config)
        evidence.extras["norm_growth"] = growth.to_dict()
        largest = build_matrix(None, Lens(theta), sizes[-1], Basis.BERGMAN, config)
        partial = largest.column_norm_partial_sums()
        marks = [2**j for j in range(int(math.log2(len(partial))) + 1)]
        result.add_points(f"norm[{label}]", sizes, growth.norms)
        result.add_points(
            f"kernel_ratio[{label}]",
            KERNEL_DEPTHS,
            [kernel_ratio(theta, 1.0 - 10.0 ** (-k)) for k in KERNEL_DEPTHS],
        )
        result.add_points(f"column_partial_sum[{label}]", marks, [partial[mark - 1] for mark in marks])
        verdicts[label] = evidence
    result.summary = {"evidence": verdicts}
    return result


def _beta_or_failure(spectrum: SingularSpectrum, d: int, config: LabConfig) -> Any:
    try:
        return beta_estimate(spectrum, d, config)
    except FitError as exc:
        logger.warning("No beta estimate: %s", exc.message)
        return exc.to_dict()


@experiment(
    "glued-rate",
    "exp(-b sqrt(n)) decay of the glued lens operator, cross-checked against direct truncation",
    theta=0.25, N=1024, n_keep=512, direct_degree=24,
)
def _glued_rate(params: Dict[str, Any], config: LabConfig) -> RunResult:
    theta, N = float(params["theta"]), int(params["N"])
    spectrum = glued_spectrum(Lens(theta), N, min(int(params["n_keep"]), N), config)
    fits = compare_families(spectrum, ("sqrt", "exp", "cbrt"), config)
    result = RunResult()
    result.add_spectrum("a_n", spectrum)
    result.summary = {
        "fits": fits,
        "best": best_fit(fits),
        "stabilized": spectrum.stabilized_count(),
        "certificate": spectrum.certificate,
        "tail_budget": spectrum.tail_budget,
    }
    degree = int(params["direct_degree"])
    if degree > 0:
        direct = direct2d_spectrum(Glued(Lens(theta)), degree, len(monomials(degree)), config)
        result.add_spectrum("direct2d", direct)
        result.summary["direct2d"] = cross_check(spectrum, direct, config=config)
    return result


def _triangular_run(
    phi: SymbolSpec,
    psi: SymbolSpec,
    params: Dict[str, Any],
    config: LabConfig,
    family: str,
    families: Sequence[str],
    levels: Sequence[Level],
) -> RunResult:
    N, n_keep = int(params["N"]), int(params["n_keep"])
    spectra, rho, K = triangular_blocks(phi, psi, None, N, n_keep, config)
    ceiling = triangular_ceiling(phi, rho, K)
    spectrum = merge_blocks(spectra, ceiling, n_keep, spectra[0].truncation)
    logger.info("Merged %d blocks (rho=%.6g, ceiling=%.3g)", K + 1, rho, ceiling)
    result = RunResult()
    result.add_spectrum("a_n", spectrum)
    norms = block_norms(spectra)
    result.add_points("block_norm", range(len(norms)), norms)

    checks = []
    block_len = min(len(s) for s in spectra)
    for Ks in range(2, K + 1):
        schedule, index = majo_schedule(family, Ks)
        if schedule[0] > block_len or index > len(spectrum):
            break
        _, bound = upper_block_bound(spectra, schedule, triangular_ceiling(phi, rho, Ks))
        value = float(spectrum.values[index - 1])
        checks.append({"K": Ks, "N": index, "a_N": value, "bound": bound, "holds": value <= bound * (1.0 + 1e-9)})
        result.add_points("upper_bound", [index], [bound])

    stabilized = spectrum.stabilized_count()
    lower = [estim_inf_bound(n, levels) for n in range(1, max(stabilized, 1) + 1)]
    result.add_values("lower_bound_shape", [b.value for b in lower], proxy=True)
    result.summary = {
        "rho": rho,
        "K": K,
        "ceiling": ceiling,
        "stabilized": stabilized,
        "fits": compare_families(spectrum, families, config),
        "truncation": spectrum.truncation,
        "upper_bound_checks": checks,
        "levels": levels,
    }
    return result


@experiment(
    "triangular-lens",
    "(lens(z1), c B(z1) z2): block spectrum, N^(1/3) rate and bound shapes",
    theta=0.5, c=0.5, sigma=0.5, eps1=0.5, count=20, N=128, n_keep=200, levels=12,
)
def _triangular_lens(params: Dict[str, Any], config: LabConfig) -> RunResult:
    theta, c = float(params["theta"]), float(params["c"])
    sigma, eps1 = float(params["sigma"]), float(params["eps1"])
    symbol = lens_blaschke_symbol(theta, c, sigma, eps1, int(params["count"]))
    levels = lens_lower_levels(theta, sigma, eps1, int(params["levels"]), c)
    return _triangular_run(symbol.phi, symbol.psi, params, config, "lens", ("cbrt", "sqrt", "exp"), levels)


@experiment(
    "triangular-cusp",
    "(cusp(z1), c B(z1) z2): block spectrum, sqrt(n / log n) rate and bound shapes",
    c=0.5, sigma=0.5, eps1=0.5, count=20, N=128, n_keep=200, levels=12,
)
def _triangular_cusp(params: Dict[str, Any], config: LabConfig) -> RunResult:
    c, sigma, eps1 = float(params["c"]), float(params["sigma"]), float(params["eps1"])
    symbol = cusp_blaschke_symbol(c, sigma, eps1, int(params["count"]))
    levels = cusp_lower_levels(sigma, eps1, int(params["levels"]), c)
    return _triangular_run(symbol.phi, symbol.psi, params, config, "cusp", ("sqrt_log", "sqrt", "cbrt"), levels)


@experiment(
    "chobou",
    "Symbol with ||Phi||_inf = 1 and beta_2 < 1: spectrum, fits, beta estimate",
    theta=0.5, N=512, n_keep=200, direct_degree=20, budget_sizes=[8, 16, 32],
)
def _chobou(params: Dict[str, Any], config: LabConfig) -> RunResult:
    theta, N, n_keep = float(params["theta"]), int(params["N"]), int(params["n_keep"])
    symbol = chobou_symbol(theta)
    spectra, rho, K = triangular_blocks(symbol.phi, symbol.psi, None, N, n_keep, config)
    ceiling = triangular_ceiling(symbol.phi, rho, K)
    spectrum = merge_blocks(spectra, ceiling, n_keep, spectra[0].truncation)
    result = RunResult()
    result.add_spectrum("a_n", spectrum)

    summary: Dict[str, Any] = {
        "rho": rho,
        "K": K,
        "ceiling": ceiling,
        "sup_phi": boundary_sup(symbol.phi),
        "sup_psi": boundary_sup(symbol.psi),
        "psi_at_1": abs(evaluate(symbol.psi, 1.0)),
        "stabilized": spectrum.stabilized_count(),
        "fits": compare_families(spectrum, ("sqrt", "cbrt", "exp"), config),
        "beta": _beta_or_failure(spectrum, 2, config),
    }
    degree = int(params["direct_degree"])
    if degree > 0:
        logger.info("Cross-checking against the degree %d direct truncation", degree)
        direct = direct2d_spectrum(symbol, degree, len(monomials(degree)), config)
        result.add_spectrum("direct2d", direct)
        summary["direct2d"] = cross_check(spectrum, direct, config=config)

    C = max(1.0, contact_constant(symbol.phi))
    delta = math.cos(0.5 * math.pi * theta)
    budgets = {int(n): chobou_budget(int(n), theta, C, delta) for n in _floats(params["budget_sizes"])}
    for n, budget in budgets.items():
        result.add_points("budget_ratio", [n], [budget.ratio])
    summary["contact_constant"] = C
    summary["budgets"] = {str(n): {"d": b.d, "ratio": b.ratio} for n, b in budgets.items()}
    result.summary = summary
    return result


@experiment(
    "blaschke-circles",
    "Circles on which an interpolating Blaschke product stays above its floor",
    sigma=0.5, eps1=0.5, J=40, levels=8, samples=4096,
)
def _blaschke_circles(params: Dict[str, Any], config: LabConfig) -> RunResult:
    sigma, eps1 = float(params["sigma"]), float(params["eps1"])
    circles = blaschke_radii(sigma, eps1, int(params["levels"]))
    product = BlaschkeFinite(tuple(interpolating_zeros(sigma, eps1, int(params["J"]))))
    angles = boundary_points(int(params["samples"]))
    minima = [
        float(np.min(np.abs(evaluate(product, circle.radius * np.exp(1j * angles))))) for circle in circles
    ]
    level = np.array([circle.level for circle in circles], dtype=float)
    regression = stats.linregress(level, np.log([circle.rho for circle in circles]))
    result = RunResult()
    result.add_values("rho", [circle.rho for circle in circles])
    result.add_values("delta", [circle.delta for circle in circles])
    result.add_values("sampled_min", minima)
    result.summary = {
        "slope": float(regression.slope),
        "expected_slope": math.log(sigma),
        "r2": float(regression.rvalue**2),
        "floor_holds": all(m >= c.delta for m, c in zip(minima, circles)),
        "cases": [circle.case for circle in circles],
    }
    return result


@experiment(
    "gunatillake",
    "Eigenvalues w(a) phi'(a)^j of weighted composition operators",
    weight=[0.3, 1.0], scale=0.5, offset=0.0, N=48, count=8,
)
def _gunatillake(params: Dict[str, Any], config: LabConfig) -> RunResult:
    weight = Polynomial(tuple(_floats(params["weight"])))
    symbol = Affine(scale=float(params["scale"]), offset=float(params["offset"]))
    N, count = int(params["N"]), int(params["count"])
    matrix = build_matrix(weight, symbol, N, Basis.HARDY, config)
    eigs = eigenvalues(matrix, count)
    predicted = gunatillake_prediction(weight, symbol, count)
    spectrum = singular_values(matrix, N, config)
    result = RunResult()
    result.add_values("|lambda|", np.abs(eigs), start=0)
    result.add_values("predicted", np.abs(predicted), start=0)
    result.summary = {
        "max_error": float(np.max(np.abs(np.abs(eigs) - np.abs(predicted)))),
        "weyl": weyl_check(spectrum, eigenvalues(matrix, N)),
    }
    return result


@experiment("capacity-table", "tau_m and Gamma_m of a closed polydisk", radii=[math.exp(-1.0), math.exp(-1.0)])
def _capacity_table(params: Dict[str, Any], config: LabConfig) -> RunResult:
    radii = _floats(params["radii"])
    value = tau_polydisk(radii)
    result = RunResult()
    result.add_values("green_capacity", [green_capacity_disk(r) for r in radii])
    result.add_points("gamma", [value.m], [value.gamma])
    result.summary = value.to_dict()
    return result


@experiment("counting-lemma", "Lattice counts against A^m / (prod(lambda) m!)", log_weights=[1.0, 2.0], A=[10, 20, 40, 80])
def _counting_lemma(params: Dict[str, Any], config: LabConfig) -> RunResult:
    weights = _floats(params["log_weights"])
    counts = [count_lattice(weights, A) for A in _floats(params["A"])]
    ratios = [c.ratio for c in counts]
    result = RunResult()
    result.add_values("count", [c.count for c in counts])
    result.add_values("ratio", ratios)
    distances = [abs(r - 1.0) for r in ratios]
    result.summary = {
        "A": _floats(params["A"]),
        "counts": counts,
        "monotone": all(b <= a for a, b in zip(distances, distances[1:])),
        "final_in_band": 0.9 <= ratios[-1] <= 1.1,
    }
    return result


@experiment("beta-vs-gamma", "beta_2 of a diagonal symbol against Gamma_2", radii=[0.5, 0.3], degree=40, compare=50)
def _beta_vs_gamma(params: Dict[str, Any], config: LabConfig) -> RunResult:
    symbol = Diagonal(tuple(_floats(params["radii"])))
    degree = int(params["degree"])
    spectrum = direct2d_spectrum(symbol, degree, len(monomials(degree)), config)
    compare = min(int(params["compare"]), len(spectrum))
    oracle = rearrangement_oracle(symbol.log_weights, compare)
    beta = beta_estimate(spectrum, len(symbol.radii), config)
    capacity = tau_polydisk(symbol.radii)
    result = RunResult()
    result.add_spectrum("a_n", spectrum)
    result.add_values("oracle", oracle)
    result.add_values("b_n", beta.b)
    result.summary = {
        "oracle_max_error": float(np.max(np.abs(spectrum.values[:compare] - oracle))),
        "beta": beta,
        "gamma": capacity.gamma,
        "difference": beta.value - capacity.gamma,
    }
    return result
