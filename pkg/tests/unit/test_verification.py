from fractions import Fraction

import pytest
from pydantic import ValidationError

from duality_lab.algebra.element import star
from duality_lab.algebra.lie_algebra import A, A_DAG, E, F, H, SL2, StarName
from duality_lab.algebra.morphisms import apply_morphism, identity_morphism, theta_charlier, \
    theta_sqrt_c_from_c
from duality_lab.common.errors import CarrierMismatchError, ConvergenceError, ParameterDomainError, \
    UnknownTypeError
from duality_lab.common.scalars import ArithmeticMode
from duality_lab.kernels.charlier import CharlierKernel
from duality_lab.kernels.duality_kernel import KernelFamily
from duality_lab.kernels.meixner import MeixnerKernel
from duality_lab.processes.process_spec import ProcessFamily, ProcessSpec
from duality_lab.representations.heisenberg import RhoC, SigmaC
from duality_lab.representations.su11 import PiK
from duality_lab.verification.cases_catalog import ORTHOGONALITY_FAMILIES, CasesLoader, duality_case, \
    duality_case_names, duality_reports, intertwining_cases, list_cases
from duality_lab.verification.duality_case import DualityCase, EvaluationPlan
from duality_lab.verification.duality_residual import NEGATIVE_CONTROL_THRESHOLD, discrete_states, \
    duality_residual, float_points, product_jet
from duality_lab.verification.gram import gram_residual
from duality_lab.verification.intertwining import intertwining_residual, laguerre_eigen_residual, \
    meixner_eigen_residual
from duality_lab.verification_report import CheckKind, ResidualAccumulator

QUARTER = Fraction(1, 4)
CASE_NAMES = ["irw-charlier", "irw-dif-hermite", "dif-exp", "sip-meixner", "sep-krawtchouk",
              "sip-bep-laguerre", "bep-bessel", "sip-hyp-mp"]
EXACT_CASES = ["irw-charlier", "irw-dif-hermite", "sip-meixner", "sep-krawtchouk", "sip-bep-laguerre"]

SWEEP = [
    ("irw-charlier", {"c": QUARTER, "grid": 5}),
    ("irw-dif-hermite", {"c": QUARTER, "grid": 4}),
    ("sip-meixner", {"c": QUARTER, "k": [1, 1], "grid": 4}),
    ("sip-meixner", {"c": Fraction(3, 4), "k": [Fraction(1, 2), 2], "grid": 4}),
    ("sep-krawtchouk", {"c": QUARTER}),
    ("sip-bep-laguerre", {"k": [1, 1], "grid": 4}),
    ("dif-exp", {"c": QUARTER, "grid": 8}),
    ("bep-bessel", {"k": [1, 1], "grid": 8}),
]


def test_catalog_holds_every_case():
    assert duality_case_names() == CASE_NAMES


@pytest.mark.parametrize("name", CASE_NAMES)
def test_duality_case_holds(name):
    report = duality_residual(duality_case(name))
    assert report.kind == CheckKind.Identity
    assert report.points_checked > 0
    assert report.passed(), report
    if name in EXACT_CASES:
        assert report.mode == ArithmeticMode.Exact
        assert report.max_abs_residual == 0.0


@pytest.mark.parametrize("name", CASE_NAMES)
def test_negative_control_is_detected(name):
    report = duality_residual(duality_case(name, control=True))
    assert report.kind == CheckKind.NegativeControl
    assert report.notes
    assert report.passed(), report
    measured = report.max_rel_residual if report.relative else report.max_abs_residual
    assert measured > NEGATIVE_CONTROL_THRESHOLD


@pytest.mark.parametrize("name, overrides", SWEEP, ids=[f"{name}-{i}" for i, (name, _) in enumerate(SWEEP)])
def test_parameter_sweep(name, overrides):
    assert duality_residual(duality_case(name, **overrides)).passed()


def test_kernel_scale_leaves_residual_zero():
    report = duality_residual(duality_case("irw-charlier", **{"kernel-scale": "5/2", "grid": 5}))
    assert report.passed()
    assert report.max_abs_residual == 0.0


def test_zero_kernel_scale_rejected():
    with pytest.raises(ValidationError):
        duality_case("irw-charlier", **{"kernel-scale": 0})


def test_laguerre_duality_independent_of_c():
    report = duality_residual(duality_case("sip-bep-laguerre", c=QUARTER, grid=4))
    assert report.passed()
    assert report.max_abs_residual == 0.0


def test_three_site_charlier():
    report = duality_residual(duality_case("irw-charlier", sites=3, grid=3))
    assert report.passed()
    assert report.points_checked == 4 ** 6


def test_sip_hyp_notes_the_dropped_shift():
    case = duality_case("sip-hyp-mp")
    assert any("k_i k_j" in note for note in case.notes)
    assert case.anchor


def test_parallel_workers_match_serial():
    case = duality_case("sip-meixner", grid=4)
    serial = duality_residual(case, workers=1)
    parallel = duality_residual(case, workers=4)
    assert serial.points_checked == parallel.points_checked
    assert serial.max_abs_residual == parallel.max_abs_residual == 0.0


def test_unknown_case_name():
    with pytest.raises(UnknownTypeError):
        duality_case("sip-charlier")
    with pytest.raises(UnknownTypeError):
        CasesLoader.register_case("broken", None, "")


def test_plan_mismatch_raises():
    case = duality_case("irw-charlier").model_copy(update={"plan": EvaluationPlan.ExactPolynomial})
    with pytest.raises(CarrierMismatchError):
        duality_residual(case)
    case = duality_case("dif-exp").model_copy(update={"plan": EvaluationPlan.ExactDiscrete})
    with pytest.raises(CarrierMismatchError):
        duality_residual(case)


def test_duality_case_site_mismatch():
    left = ProcessSpec(family=ProcessFamily.IRW, sites=2, c=1)
    right = ProcessSpec(family=ProcessFamily.IRW, sites=3, c=1)
    with pytest.raises(ValidationError):
        DualityCase(name="bad", left=left, right=right, kernel=KernelFamily.Charlier,
                    kernel_params=[{"c": 1}] * 2, plan=EvaluationPlan.ExactDiscrete)
    with pytest.raises(ValidationError):
        DualityCase(name="bad", left=left, right=left, kernel=KernelFamily.Charlier,
                    kernel_params=[{"c": 1}] * 3, plan=EvaluationPlan.ExactDiscrete)
    with pytest.raises(ValidationError):
        DualityCase(name="bad", left=left, right=left, kernel=KernelFamily.Charlier,
                    kernel_params=[{"c": 1}] * 2, plan=EvaluationPlan.ExactDiscrete, interval=(2.0, 1.0))


def test_discrete_states_respect_caps():
    spec = ProcessSpec(family=ProcessFamily.SEP, sites=2, j=[3, 1])
    states = discrete_states(spec, 2)
    assert len(states) == 3 * 2
    assert max(s[1] for s in states) == 1


def test_float_points_are_seeded():
    case = duality_case("bep-bessel", grid=4)
    first, second = float_points(case), float_points(case)
    assert first == second
    assert len(first) == 16
    assert all(0.1 <= v <= 10.0 for x, y in first for v in x + y)


def test_product_jet():
    # f(z) = z^2 at 2 and g(z) = z^3 at 3
    value, gradient, hessian = product_jet([(4, 4, 2), (27, 27, 18)])
    assert value == 108
    assert gradient == [4 * 27, 4 * 27]
    assert hessian == [[2 * 27, 4 * 27], [4 * 27, 4 * 18]]


def test_duality_reports_pairs_controls():
    reports = duality_reports(["irw-charlier"], {"grid": 4})
    assert [r.kind for r in reports] == [CheckKind.Identity, CheckKind.NegativeControl]
    assert all(r.passed() for r in reports)


@pytest.mark.parametrize("case", intertwining_cases(), ids=lambda s: s.name)
def test_intertwining_holds(case):
    report = case.run()
    assert report.passed(), report
    assert report.case == f"intertwining:{case.name}"
    assert len(report.notes) >= 4


def test_charlier_intertwining_single_generator():
    c = Fraction(3, 4)
    report = intertwining_residual(RhoC(c), RhoC(c), CharlierKernel(c), lambda x: star(x, StarName.Heisenberg),
                                   lambda x: apply_morphism(theta_charlier(), x), grid=6, generators=[A])
    assert report.passed()
    assert report.max_abs_residual == 0.0
    assert report.notes == ["a: 0.0"]


def test_intertwining_detects_wrong_map():
    c = Fraction(3, 4)
    report = intertwining_residual(RhoC(c), RhoC(c), CharlierKernel(c), lambda x: x, lambda x: x, grid=4,
                                   generators=[A, A_DAG])
    assert not report.passed()


def test_meixner_intertwining_needs_transpose():
    k, c = Fraction(3, 4), QUARTER
    theta = theta_sqrt_c_from_c(c)
    report = intertwining_residual(PiK(k, c), PiK(k, c), MeixnerKernel(k, c),
                                   lambda x: apply_morphism(theta, x),
                                   lambda x: apply_morphism(identity_morphism(SL2), x),
                                   grid=4, generators=[H, E, F])
    assert not report.passed()
    assert report.max_abs_residual > 0


def test_intertwining_carrier_mismatch():
    c = Fraction(3, 4)
    with pytest.raises(CarrierMismatchError):
        intertwining_residual(RhoC(c), SigmaC(c), CharlierKernel(c), lambda x: x, lambda x: x, grid=2)


@pytest.mark.parametrize("k, c", [(Fraction(3, 4), QUARTER), (1, Fraction(1, 9)), (Fraction(1, 2), Fraction(1, 2))])
def test_meixner_eigen_relation(k, c):
    assert meixner_eigen_residual(k, c, grid=5).passed()


def test_meixner_eigen_relation_with_irrational_root_is_float():
    report = meixner_eigen_residual(Fraction(1, 2), Fraction(1, 2), grid=5)
    assert report.mode == ArithmeticMode.Float
    assert report.max_rel_residual < 1e-12


def test_residual_accumulator_natural_scale():
    bare = ResidualAccumulator()
    bare.add(1e-16, 0.0)
    assert bare.max_rel == 1.0
    scaled = ResidualAccumulator()
    scaled.add(1e-16, 0.0, 10.0)
    assert scaled.max_abs == 1e-16
    assert scaled.max_rel == pytest.approx(1e-17)
    exact = ResidualAccumulator()
    exact.add(Fraction(1, 3), Fraction(1, 3), 5.0)
    assert exact.max_abs == 0.0
    assert exact.max_rel == 0.0


@pytest.mark.parametrize("k", [Fraction(1, 2), Fraction(3, 4), 2])
def test_laguerre_eigen_relation(k):
    report = laguerre_eigen_residual(k, grid=6)
    assert report.passed()
    assert report.max_abs_residual == 0.0


@pytest.mark.parametrize("family, params, trunc", ORTHOGONALITY_FAMILIES, ids=lambda s: str(s))
def test_gram_residual(family, params, trunc):
    report = gram_residual(family, params, trunc)
    assert report.passed(), report
    assert report.points_checked > 0


def test_gram_krawtchouk_exact_and_capped():
    report = gram_residual(KernelFamily.Krawtchouk, {"j": 4, "c": Fraction(1, 3)}, 10)
    assert report.mode == ArithmeticMode.Exact
    assert report.max_abs_residual == 0.0
    assert report.case.endswith("trunc=4")
    assert report.points_checked == 15


def test_gram_hermite_tight():
    report = gram_residual(KernelFamily.Hermite, {"c": Fraction(3, 4)}, 8)
    assert report.max_rel_residual <= 1e-12


def test_gram_rejects_analytic_kernels():
    with pytest.raises(ParameterDomainError):
        gram_residual(KernelFamily.Bessel, {"k": 1}, 4)


def test_gram_too_few_nodes():
    with pytest.raises(ConvergenceError):
        gram_residual(KernelFamily.Laguerre, {"k": Fraction(3, 4)}, 4, nodes=2)


def test_list_cases_is_deterministic():
    first, second = list_cases(), list_cases()
    assert first == second
    names = [entry["name"] for entry in first]
    assert "bep-bessel" in names
    assert "sip-hyp-mp" in names
    assert [entry["kind"] for entry in first].count("duality") == len(CASE_NAMES)
    assert [entry["kind"] for entry in first].count("intertwining") == 7
    assert [entry["kind"] for entry in first].count("orthogonality") == len(ORTHOGONALITY_FAMILIES)
    assert all(entry["anchor"] for entry in first)
