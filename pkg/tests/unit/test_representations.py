import math
from fractions import Fraction

import pytest
import sympy

from duality_lab.algebra.element import AlgebraElement
from duality_lab.algebra.lie_algebra import A, A_DAG, E, F, H, HEISENBERG, Z
from duality_lab.algebra.named_elements import y_heisenberg
from duality_lab.common.errors import CarrierMismatchError, ExactModeError, FactorMismatchError, \
    MarginViolationError, ParameterDomainError, UnknownTypeError
from duality_lab.common.scalars import ArithmeticMode
from duality_lab.representations.carriers import delta, site_symbol
from duality_lab.representations.checks import bracket_residual, casimir_scalar_residual, r_zero_residual, \
    representation_reports, scale_equivalence_check, star_adjointness_residual
from duality_lab.representations.heisenberg import RhoC, SigmaC
from duality_lab.representations.representation import apply_tensor
from duality_lab.representations.representations_loader import RepresentationsLoader
from duality_lab.representations.su11 import PiK, RhoK, SigmaK
from duality_lab.verification_report import CheckKind

x = site_symbol(0)


def test_rho_c_generators():
    rep = RhoC(Fraction(2))
    assert rep.apply_generator(A, delta(3)) == {(4,): 4}
    assert rep.apply_generator(A_DAG, delta(3)) == {(2,): 2}
    assert rep.apply_generator(Z, delta(3)) == {(3,): 2}
    assert rep.apply_generator(A, delta(0)) == {(1,): 1}
    assert rep.apply_generator(A_DAG, delta(0)) == {}


def test_rho_c_pointwise_action():
    rep = RhoC(Fraction(2))
    a = AlgebraElement.generator(HEISENBERG, A)
    a_dag = AlgebraElement.generator(HEISENBERG, A_DAG)
    assert rep.act_at(a, lambda n: n * n, 3) == 12
    assert rep.act_at(a_dag, lambda n: n * n, 3) == 32
    assert rep.act_at(a * a_dag, lambda n: 1, 3) == 6


def test_sigma_c_generators():
    rep = SigmaC(Fraction(1))
    assert sympy.expand(rep.apply_generator(A, x) - (x ** 2 - 1)) == 0
    assert sympy.expand(rep.apply_generator(A_DAG, x ** 2) - 2 * x) == 0
    assert rep.apply_generator(Z, x) == x


def test_pi_k_generators():
    rep = PiK(Fraction(1), Fraction(1, 4))
    assert rep.apply_generator(H, delta(2)) == {(2,): 6}
    assert rep.apply_generator(E, delta(2)) == {(3,): 6}
    assert rep.apply_generator(F, delta(2)) == {(1,): Fraction(-3, 2)}
    assert rep.casimir_value() == 0


def test_pi_k_irrational_root_falls_back_to_float():
    rep = PiK(Fraction(1), Fraction(1, 2))
    assert rep.mode == ArithmeticMode.Float
    assert rep.apply_generator(E, delta(0))[(1,)] == pytest.approx(math.sqrt(2))


def test_sigma_k_genuine_and_printed_e():
    assert sympy.expand(SigmaK(Fraction(1)).apply_generator(E, 1) - sympy.I * x / 2) == 0
    assert sympy.expand(SigmaK(Fraction(1), printed=True).apply_generator(E, 1) + sympy.I * x / 2) == 0


def test_rho_k_h_is_multiplication():
    image = RhoK(Fraction(1), 1.0).apply_generator(H, 1)
    assert sympy.expand(image + 2 * sympy.I * x) == 0


@pytest.mark.parametrize("rep", [
    RhoC(Fraction(2), 12),
    SigmaC(Fraction(1, 2)),
    PiK(Fraction(1, 2), Fraction(1), 12),
    PiK(Fraction(1), Fraction(1, 4), 12),
    PiK(Fraction(1), Fraction(1, 2), 12),
    PiK.create_representation({"j": 3}),
    SigmaK(Fraction(1)),
    RhoK(Fraction(1), 1.0),
])
def test_bracket_relations_hold(rep):
    report = bracket_residual(rep)
    assert report.passed(), report


@pytest.mark.parametrize("rep", [SigmaK(Fraction(1), printed=True), RhoK(Fraction(1), 1.0, printed=True)])
def test_printed_operator_sets_break_the_bracket(rep):
    report = bracket_residual(rep)
    assert not report.passed()
    assert report.max_abs_residual > 0


def test_flipped_generator_is_detected():
    report = bracket_residual(RhoC(Fraction(2), 8), flip=A)
    assert report.kind == CheckKind.NegativeControl
    assert report.passed()
    assert report.max_abs_residual > 0


@pytest.mark.parametrize("rep", [
    RhoC(Fraction(2), 12),
    SigmaC(Fraction(1)),
    PiK(Fraction(1), Fraction(1, 4), 12),
    SigmaK(Fraction(1)),
])
def test_exact_star_adjointness(rep):
    report = star_adjointness_residual(rep)
    assert report.passed(), report
    assert report.max_abs_residual == 0


def test_rho_k_star_adjointness_by_quadrature():
    report = star_adjointness_residual(RhoK(Fraction(1), math.pi / 2, 8))
    assert report.passed(), report


def test_rho_k_adjointness_with_vanishing_pairings():
    report = star_adjointness_residual(RhoK(Fraction(3, 4), math.pi / 3, 8))
    assert report.passed(), report
    assert report.max_rel_residual < 1e-8


def test_representation_reports_include_adjointness():
    reports = representation_reports([RhoK(Fraction(3, 4), math.pi / 3, 6), PiK(Fraction(1), Fraction(2))])
    cases = [report.case for report in reports]
    assert any(case.startswith("star-adjointness:rho-k") for case in cases)
    assert not any(case.startswith("star-adjointness:pi-k") for case in cases)


def test_pi_k_without_weight_rejects_adjointness_check():
    with pytest.raises(ParameterDomainError):
        star_adjointness_residual(PiK(Fraction(1), Fraction(2)))


@pytest.mark.parametrize("rep", [
    PiK(Fraction(3, 2), Fraction(1), 10),
    PiK(Fraction(1), Fraction(1, 4), 10),
    PiK.create_representation({"j": 4}),
])
def test_casimir_acts_as_scalar(rep):
    assert casimir_scalar_residual(rep).passed()


def test_exclusion_variant_parameters():
    rep = RepresentationsLoader.load_representation("pi-k", {"j": 3})
    assert rep.k == Fraction(-3, 2)
    assert rep.carrier.closed
    assert rep.casimir_value() == Fraction(15, 2)


def test_r_vanishes_under_rho_c():
    assert r_zero_residual(2, 8).passed()


def test_scale_equivalence():
    assert scale_equivalence_check(1, Fraction(1, 4), Fraction(1, 9), 10).passed()
    assert scale_equivalence_check(1, Fraction(1, 2), Fraction(1, 3), 10).passed()
    control = scale_equivalence_check(1, Fraction(1, 4), Fraction(1, 9), 10, exponent=1)
    assert control.kind == CheckKind.NegativeControl
    assert control.passed()


def test_scale_equivalence_domain():
    with pytest.raises(ParameterDomainError):
        scale_equivalence_check(1, Fraction(3, 2), Fraction(1, 4))


def test_margin_violations():
    with pytest.raises(MarginViolationError):
        RhoC(Fraction(1), 3).apply_generator(A, delta(3))
    with pytest.raises(MarginViolationError):
        SigmaC(Fraction(1), 2).apply_generator(A, x ** 2)


def test_float_coefficients_rejected_in_exact_mode():
    element = AlgebraElement.generator(HEISENBERG, A) * 0.5
    with pytest.raises(ExactModeError):
        RhoC(Fraction(1)).apply_element(element, delta(1))


def test_apply_tensor_checks_factors():
    rho = RhoC(Fraction(1), 6)
    with pytest.raises(FactorMismatchError):
        apply_tensor([rho], y_heisenberg(), delta(1, 1))
    with pytest.raises(CarrierMismatchError):
        apply_tensor([rho, SigmaC(Fraction(1))], y_heisenberg(), delta(1, 1))


def test_heisenberg_pair_moves_one_particle():
    rho = RhoC(Fraction(1), 6)
    image = apply_tensor([rho, rho], y_heisenberg(), {(1, 0): 1})
    assert image == {(1, 0): -1, (0, 1): 1}


def test_loader():
    rep = RepresentationsLoader.load_representation("sigma-c", {"c": "1/2"})
    assert isinstance(rep, SigmaC)
    assert rep.c == Fraction(1, 2)
    with pytest.raises(UnknownTypeError):
        RepresentationsLoader.load_representation("bogus", {})
    with pytest.raises(CarrierMismatchError):
        RepresentationsLoader.load_representation("rho-c", {"c": 1, "carrier": "polynomial"})
    with pytest.raises(ParameterDomainError):
        RepresentationsLoader.load_representation("rho-k", {"k": 1, "phi": 4.0})


def test_banded_matrix():
    matrix = PiK(Fraction(1)).operator(H).to_matrix(3).toarray()
    assert [matrix[n, n].real for n in range(4)] == [2, 4, 6, 8]
