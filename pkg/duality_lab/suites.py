import math
import traceback
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple, Union

from duality_lab.algebra.checks import antisymmetry_residual, casimir_centrality_residual, \
    casimir_invariance_residual, ef_difference_residual, ef_sqrt_c_residual, jacobi_residual, \
    morphism_bracket_residual, morphism_inverse_residual, star_antihomomorphism_residual, \
    star_compatibility_residual, star_involution_residual, y_correction_residual
from duality_lab.algebra.lie_algebra import A, HEISENBERG, SL2, LieAlgebraSpec, StarName
from duality_lab.algebra.morphisms import AlgebraMorphism, antipode, theta_charlier, theta_exp, theta_parabolic, \
    theta_phi, theta_phi_printed, theta_sqrt_c_from_c, transpose_sl2
from duality_lab.common.logger import Logger
from duality_lab.common.scalars import ArithmeticMode
from duality_lab.kernels.bessel import bessel_jv_residual
from duality_lab.kernels.cross_validation import cross_validation_kernels, cross_validation_residual
from duality_lab.kernels.hermite import hermite_relations_residual
from duality_lab.kernels.quadrature import exactness_residual, gauss_hermite, gauss_laguerre
from duality_lab.kernels.weights import gamma, gaussian
from duality_lab.montecarlo.checks import MC_CASES, simulate_reports
from duality_lab.processes.checks import process_reports
from duality_lab.processes.process_spec import ProcessSpec
from duality_lab.representations.checks import bracket_residual, r_zero_residual, representation_reports, \
    scale_equivalence_check
from duality_lab.representations.heisenberg import RhoC, SigmaC
from duality_lab.representations.representation import Representation
from duality_lab.representations.su11 import PiK, RhoK, SigmaK
from duality_lab.run_config import Command, RunConfig
from duality_lab.verification.cases_catalog import DEFAULT_PHI, duality_case_names, duality_reports, \
    intertwining_reports, orthogonality_reports
from duality_lab.verification_report import CheckKind, Stopwatch, VerificationReport

logger = Logger("suites")

# the E/F identities need a rational square root of c
ALGEBRA_C = Fraction(1, 4)
FLOAT_TOLERANCE = 1e-12
GAUSS_NODES = 6
BESSEL_POINTS = [(0.5, 0.5), (1.0, 2.0), (2.5, 0.3), (4.0, 3.0)]

Check = Callable[[], Union[VerificationReport, List[VerificationReport]]]


def failed_report(case: str, error: BaseException) -> VerificationReport:
    return VerificationReport.evaluate(case, ArithmeticMode.Float, math.inf, math.inf, 0.0,
                                       notes=[f"{type(error).__name__}: {error}"])


def guarded(case: str, check: Check) -> List[VerificationReport]:
    """Runs one check, an exception becomes a failing record instead of ending the run"""
    try:
        with Stopwatch() as watch:
            result = check()
    except Exception as e:
        logger.warn(traceback.format_exc())
        return [failed_report(case, e)]
    reports = result if isinstance(result, list) else [result]
    if len(reports) == 1 and reports[0].wall_time_ms == 0.0:
        reports = [reports[0].with_timing(watch.elapsed_ms)]
    return reports


def residual_report(case: str, residual: float, exact: bool = True,
                    kind: CheckKind = CheckKind.Identity) -> VerificationReport:
    mode = ArithmeticMode.Exact if exact else ArithmeticMode.Float
    return VerificationReport.evaluate(case, mode, residual, residual, 0.0 if exact else FLOAT_TOLERANCE, kind=kind)


def _morphism_check(case: str, residual: Callable[[AlgebraMorphism], float], m: AlgebraMorphism,
                    kind: CheckKind = CheckKind.Identity) -> List[VerificationReport]:
    return guarded(case, lambda: residual_report(case, residual(m), not m.is_float_only(), kind))


def _structure_checks(algebra: LieAlgebraSpec, stars: List[StarName]) -> List[VerificationReport]:
    name = algebra.name.value
    reports = guarded(f"jacobi:{name}", lambda: residual_report(f"jacobi:{name}", jacobi_residual(algebra)))
    reports += guarded(f"antisymmetry:{name}",
                       lambda: residual_report(f"antisymmetry:{name}", antisymmetry_residual(algebra)))
    for star in stars:
        involution, anti = f"star-involution:{name}:{star.value}", f"star-antihomomorphism:{name}:{star.value}"
        reports += guarded(involution, lambda: residual_report(involution, star_involution_residual(algebra, star)))
        reports += guarded(anti, lambda: residual_report(anti, star_antihomomorphism_residual(algebra, star)))
    return reports


def algebra_suite(config: RunConfig) -> List[VerificationReport]:
    """Exact identities of the two algebras and their morphisms, representations and generators with --all"""
    phi = config.phi if config.phi is not None else DEFAULT_PHI
    reports = _structure_checks(HEISENBERG, [StarName.Heisenberg])
    reports += _structure_checks(SL2, [StarName.Su11, StarName.Isl2R])

    morphisms = [theta_charlier(), theta_exp(), theta_sqrt_c_from_c(ALGEBRA_C), theta_parabolic(),
                 transpose_sl2(), antipode(SL2), theta_phi(phi)]
    for m in morphisms:
        reports += _morphism_check(f"morphism-bracket:{m.label()}", morphism_bracket_residual, m)
        reports += _morphism_check(f"morphism-inverse:{m.label()}", morphism_inverse_residual, m)
    printed = theta_phi_printed(phi)
    reports += _morphism_check(f"morphism-bracket:{printed.label()}", morphism_bracket_residual, printed,
                               CheckKind.NegativeControl)
    for m in (theta_sqrt_c_from_c(ALGEBRA_C), theta_parabolic(), theta_phi(phi)):
        reports += _morphism_check(f"casimir-invariance:{m.label()}", casimir_invariance_residual, m)

    compatibilities = [
        (theta_charlier(), StarName.Heisenberg, StarName.Heisenberg, CheckKind.Identity),
        (theta_sqrt_c_from_c(ALGEBRA_C), StarName.Su11, StarName.Su11, CheckKind.Identity),
        (theta_parabolic(), StarName.Isl2R, StarName.Su11, CheckKind.Identity),
        (theta_phi(phi), StarName.Su11, StarName.Isl2R, CheckKind.Identity),
        (theta_parabolic(), StarName.Su11, StarName.Su11, CheckKind.NegativeControl),
    ]
    for m, source, target, kind in compatibilities:
        case = f"star-compatibility:{m.label()}:{source.value}->{target.value}"
        reports += guarded(case, lambda: residual_report(case, star_compatibility_residual(m, source, target),
                                                         not m.is_float_only(), kind))

    c = ALGEBRA_C
    reports += guarded("y-correction", lambda: residual_report("y-correction", y_correction_residual()))
    reports += guarded(f"ef-sum:c={c}", lambda: residual_report(f"ef-sum:c={c}", ef_sqrt_c_residual(c)))
    reports += guarded(f"ef-sum:c={c}:printed-order",
                       lambda: residual_report(f"ef-sum:c={c}:printed-order", ef_sqrt_c_residual(c, True),
                                               kind=CheckKind.NegativeControl))
    reports += guarded(f"ef-difference:c={c}",
                       lambda: residual_report(f"ef-difference:c={c}", ef_difference_residual(c)))
    reports += guarded("casimir-centrality", lambda: residual_report("casimir-centrality",
                                                                     casimir_centrality_residual()))
    if config.all_checks:
        reports += representation_suite(config)
        reports += process_suite(config)
    return reports


def representation_set(config: RunConfig) -> List[Tuple[str, Callable[[], Representation]]]:
    """Named constructors, each representation is built inside its own guard"""
    trunc = config.trunc or 12
    maxdeg = config.max_degree or 8
    phi = config.phi if config.phi is not None else DEFAULT_PHI
    c = config.c if config.c is not None else Fraction(2)
    return [
        ("rho-c", lambda: RhoC(c, trunc)),
        ("sigma-c", lambda: SigmaC(c, maxdeg)),
        ("pi-k:k=1/2,c=1", lambda: PiK(Fraction(1, 2), Fraction(1), trunc)),
        ("pi-k:k=1,c=1/4", lambda: PiK(Fraction(1), Fraction(1, 4), trunc)),
        ("pi-k:k=3/4,c=1", lambda: PiK(Fraction(3, 4), Fraction(1), trunc)),
        ("sigma-k", lambda: SigmaK(Fraction(3, 4), maxdeg)),
        ("rho-k", lambda: RhoK(Fraction(3, 4), phi, maxdeg)),
    ]


def representation_suite(config: RunConfig) -> List[VerificationReport]:
    trunc = config.trunc or 12
    c = config.c if config.c is not None else Fraction(2)
    reports = []
    for name, build in representation_set(config):
        reports += guarded(f"representations:{name}", lambda: representation_reports([build()]))
    reports += guarded("bracket:flipped", lambda: bracket_residual(RhoC(c, trunc), flip=A))
    reports += guarded("r-zero", lambda: r_zero_residual(c, trunc))
    reports += guarded("scale-equivalence",
                       lambda: scale_equivalence_check(1, Fraction(1, 4), Fraction(1, 9), trunc))
    reports += guarded("scale-equivalence:exponent",
                       lambda: scale_equivalence_check(1, Fraction(1, 4), Fraction(1, 9), trunc, exponent=1))
    return reports


def process_grid(config: RunConfig) -> List[dict]:
    """Generator equivalence grid, the literal BEP drift rides along as a control"""
    maxdeg = config.max_degree or 8
    trunc = config.trunc or 16
    bep_k = [Fraction(1, 3), Fraction(2)]
    return [
        {"family": "irw", "sites": 2, "c": Fraction(3, 4), "trunc": trunc},
        {"family": "irw", "sites": 3, "c": Fraction(3, 4), "trunc": min(trunc, 6)},
        {"family": "sip", "sites": 2, "k": [Fraction(1, 2), Fraction(2)], "trunc": trunc},
        {"family": "sep", "sites": 2, "j": [3, 2]},
        {"family": "dif", "sites": 2, "c": 1, "maxdeg": maxdeg},
        {"family": "dif", "sites": 3, "c": 1, "maxdeg": min(maxdeg, 5)},
        {"family": "bep", "sites": 2, "k": bep_k, "maxdeg": maxdeg},
        {"family": "bep", "sites": 2, "k": bep_k, "maxdeg": maxdeg, "variant": "printed"},
        {"family": "hyp", "sites": 2, "k": [Fraction(1, 2), Fraction(3, 2)], "phi": DEFAULT_PHI},
    ]


def process_suite(config: RunConfig) -> List[VerificationReport]:
    reports = []
    for params in process_grid(config):
        case = f"processes:{params['family']}:sites={params['sites']}"
        reports += guarded(case, lambda: process_reports(ProcessSpec(**params)))
    return reports


def duality_suite(config: RunConfig) -> List[VerificationReport]:
    reports = []
    for name in config.cases or duality_case_names():
        reports += guarded(f"duality:{name}", lambda: duality_reports([name], config.case_overrides(),
                                                                       config.with_controls(), config.workers))
    if not config.cases:
        reports += guarded("intertwining", intertwining_reports)
    return reports


def orthogonality_suite(config: RunConfig) -> List[VerificationReport]:
    """Gram relations, recurrence against series evaluation, Gauss rule exactness"""
    reports = guarded("orthogonality", lambda: orthogonality_reports(config.trunc))
    for kernel in cross_validation_kernels():
        reports += guarded(f"cross-validation:{kernel.label()}", lambda: cross_validation_residual(kernel))
    reports += guarded("cross-validation:bessel-jv", lambda: residual_report(
        "cross-validation:bessel-jv", bessel_jv_residual(Fraction(3, 4), BESSEL_POINTS), exact=False))
    reports += guarded("hermite-relations", lambda: residual_report("hermite-relations",
                                                                  float(hermite_relations_residual(10))))
    c, k = Fraction(2), Fraction(3, 4)
    for label, rule, weight in ((f"gauss-hermite:c={c}", lambda: gauss_hermite(GAUSS_NODES, c), gaussian(c)),
                                (f"gauss-laguerre:k={k}", lambda: gauss_laguerre(GAUSS_NODES, k), gamma(k))):
        case = f"quadrature-exactness:{label}:nodes={GAUSS_NODES}"
        reports += guarded(case, lambda: residual_report(
            case, exactness_residual(rule(), weight, 2 * GAUSS_NODES - 1), exact=False))
    return reports


def simulate_suite(config: RunConfig) -> List[VerificationReport]:
    reports = []
    for name in [name for name in config.cases if name in MC_CASES] or list(MC_CASES.keys()):
        produced = guarded(f"montecarlo:{name}", lambda: simulate_reports([name], config.t, config.trials,
                                                                          config.seed, config.dt,
                                                                          config.case_overrides(),
                                                                          config.richardson, config.workers))
        for report in produced:
            logger.info(f"Monte Carlo estimate [case: {report.case}, {', '.join(report.notes[-3:])}]")
        reports += produced
    return reports


SUITES: Dict[Command, List[Callable[[RunConfig], List[VerificationReport]]]] = {
    Command.VerifyAlgebra: [algebra_suite],
    Command.VerifyDuality: [duality_suite],
    Command.VerifyOrthogonality: [orthogonality_suite],
    Command.Simulate: [simulate_suite],
    Command.All: [algebra_suite, duality_suite, orthogonality_suite, simulate_suite],
}


def rejudge(report: VerificationReport, tolerance: Optional[float]) -> VerificationReport:
    """Deterministic float identities under a caller tolerance, every other record keeps its own"""
    if tolerance is None or report.mode != ArithmeticMode.Float or report.seed is not None:
        return report
    if report.kind != CheckKind.Identity:
        return report
    if math.isinf(report.max_abs_residual):
        return report
    return VerificationReport.evaluate(report.case, report.mode, report.max_abs_residual, report.max_rel_residual,
                                       tolerance, report.points_checked, report.relative, report.kind,
                                       report.notes, report.seed).with_timing(report.wall_time_ms)


def run_suites(config: RunConfig) -> List[VerificationReport]:
    reports = []
    for suite in SUITES[config.command]:
        logger.info(f"Suite started [suite: {suite.__name__}]")
        with Stopwatch() as watch:
            produced = [rejudge(report, config.tolerance) for report in suite(config)]
        failed = [report for report in produced if not report.passed()]
        logger.info(f"Suite finished [suite: {suite.__name__}, records: {len(produced)}, failed: {len(failed)}, "
                    f"elapsed: {watch.elapsed_ms:.0f} ms]")
        for report in failed:
            logger.warn(f"Failing record [case: {report.case}, abs: {report.max_abs_residual}, "
                        f"rel: {report.max_rel_residual}, tolerance: {report.tolerance}]")
        reports += produced
    return reports
