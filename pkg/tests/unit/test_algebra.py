from fractions import Fraction

import pytest
import sympy

from duality_lab.algebra.checks import antisymmetry_residual, casimir_centrality_residual, \
    casimir_invariance_residual, ef_difference_residual, ef_sqrt_c_residual, jacobi_residual, \
    morphism_bracket_residual, morphism_inverse_residual, star_antihomomorphism_residual, \
    star_compatibility_residual, star_involution_residual, y_correction_residual
from duality_lab.algebra.element import AlgebraElement, commutator, star
from duality_lab.algebra.lie_algebra import A, A_DAG, E, F, H, HEISENBERG, SL2, Z, StarName
from duality_lab.algebra.morphisms import antipode, apply_morphism, compose, identity_morphism, theta_charlier, \
    theta_exp, theta_parabolic, theta_parabolic_inverse, theta_phi, theta_phi_printed, theta_sqrt_c, \
    theta_sqrt_c_from_c, transpose_sl2
from duality_lab.algebra.named_elements import NamedElement, casimir, named_element, r_element, x_a, y_su11
from duality_lab.algebra.tensor import TensorElement, coproduct, embed_pair, tensor
from duality_lab.common.errors import AlgebraMismatchError, ExactModeError, FactorMismatchError, \
    ParameterDomainError, UnknownStarError
from duality_lab.common.scalars import I_UNIT, ArithmeticMode, GaussianRational, parse_rational


def sl2(symbol):
    return AlgebraElement.generator(SL2, symbol)


def heis(symbol):
    return AlgebraElement.generator(HEISENBERG, symbol)


def test_gaussian_rational_arithmetic():
    assert I_UNIT * I_UNIT == -1
    assert GaussianRational(1, 2) / GaussianRational(1, 2) == 1
    assert GaussianRational(Fraction(1, 2)).conjugate() == Fraction(1, 2)
    assert isinstance(GaussianRational(1, 1) * 0.5, complex)


def test_gaussian_rational_mixes_with_sympy():
    x = sympy.Symbol("x")
    assert sympy.sympify(GaussianRational(2)) == 2
    assert sympy.sympify(GaussianRational(Fraction(1, 2), 3)) == sympy.Rational(1, 2) + 3 * sympy.I
    assert sympy.expand(x * 2 + GaussianRational(1, 1)) == 2 * x + 1 + sympy.I
    assert sympy.expand(GaussianRational(1, 1) + x) == x + 1 + sympy.I
    assert sympy.expand(x * GaussianRational(0, 1)) == sympy.I * x
    assert sympy.expand(GaussianRational(0, 1) * x) == sympy.I * x
    assert sympy.expand(GaussianRational(1) - x) == 1 - x
    assert sympy.expand(x - GaussianRational(1)) == x - 1
    assert sympy.expand(x / GaussianRational(2)) == x / 2
    assert sympy.expand(sympy.Integer(3) * GaussianRational(0, 1)) == 3 * sympy.I


def test_parse_rational():
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational(2) == Fraction(2)
    assert parse_rational(0.25) == Fraction(1, 4)
    with pytest.raises(ParameterDomainError):
        parse_rational("three quarters")


def test_basic_commutators():
    assert commutator(heis(A_DAG), heis(A)) == heis(Z)
    assert commutator(sl2(E), sl2(F)) == sl2(H)
    assert commutator(sl2(H), sl2(E)) == sl2(E) * 2
    assert commutator(sl2(E), sl2(E)).is_zero()


def test_commutator_rejects_mixed_algebras():
    with pytest.raises(AlgebraMismatchError):
        commutator(heis(A), sl2(H))


def test_normal_order_is_canonical():
    fe = sl2(F) * sl2(E)
    assert fe == sl2(E) * sl2(F) - sl2(H)
    assert (heis(A_DAG) * heis(A)).coefficient((A, A_DAG)) == 1


def test_star_structures():
    assert star(sl2(E), StarName.Su11) == -sl2(F)
    assert star(sl2(E) * sl2(F), StarName.Su11) == sl2(E) * sl2(F)
    assert star(sl2(H) * I_UNIT, StarName.Su11) == sl2(H) * (-I_UNIT)
    assert star(heis(A), StarName.Heisenberg) == heis(A_DAG)
    with pytest.raises(UnknownStarError):
        star(sl2(E), StarName.Heisenberg)
    with pytest.raises(UnknownStarError):
        star(sl2(E), "bogus")


@pytest.mark.parametrize("algebra", [HEISENBERG, SL2])
def test_lie_axioms(algebra):
    assert antisymmetry_residual(algebra) == 0
    assert jacobi_residual(algebra) == 0
    for star_name in algebra.stars:
        assert star_involution_residual(algebra, star_name) == 0
        assert star_antihomomorphism_residual(algebra, star_name) == 0


def test_casimir():
    omega = named_element(NamedElement.Casimir)
    assert omega.coefficient((H, H)) == Fraction(1, 2)
    assert omega.coefficient((E, F)) == 2
    assert omega.coefficient((H,)) == -1
    assert star(omega, StarName.Su11) == omega
    assert casimir_centrality_residual() == 0


def test_x_a():
    assert x_a(0) == sl2(E) - sl2(F)
    assert named_element(NamedElement.Xa, a="1/2") == sl2(H) * Fraction(-1, 2) + sl2(E) - sl2(F)
    with pytest.raises(ParameterDomainError):
        named_element(NamedElement.Xa)


def test_coproduct():
    one = AlgebraElement.scalar(SL2, 1)
    assert coproduct(sl2(H)) == tensor(one, sl2(H)) + tensor(sl2(H), one)
    assert coproduct(one) == TensorElement.identity(SL2, 2)
    omega = casimir()
    expected = tensor(one, omega) + tensor(omega, one) + tensor(sl2(H), sl2(H)) \
        + tensor(sl2(F), sl2(E)) * 2 + tensor(sl2(E), sl2(F)) * 2
    assert coproduct(omega) == expected


def test_y_su11_expansion():
    expected = (tensor(sl2(H), sl2(H)) + tensor(sl2(F), sl2(E)) * 2 + tensor(sl2(E), sl2(F)) * 2) * Fraction(-1, 2)
    assert y_su11() == expected


def test_embed_pair():
    pair = tensor(sl2(E), sl2(F))
    one = AlgebraElement.scalar(SL2, 1)
    assert embed_pair(pair, 1, 2, 2) == pair
    assert embed_pair(pair, 1, 3, 3) == tensor(sl2(E), one, sl2(F))
    assert embed_pair(pair, 2, 3, 4) == tensor(one, sl2(E), sl2(F), one)
    with pytest.raises(IndexError):
        embed_pair(pair, 3, 2, 3)
    with pytest.raises(IndexError):
        embed_pair(pair, 1, 4, 3)
    with pytest.raises(FactorMismatchError):
        embed_pair(tensor(sl2(E), sl2(F), sl2(H)), 1, 2, 3)


def test_theta_charlier():
    theta = theta_charlier()
    assert apply_morphism(theta, heis(Z)) == heis(Z)
    assert morphism_inverse_residual(theta) == 0
    assert y_correction_residual() == 0
    assert r_element().terms


def test_theta_sqrt_c_inverse():
    forward = theta_sqrt_c(Fraction(1, 2))
    backward = theta_sqrt_c(Fraction(-1, 2))
    assert apply_morphism(backward, apply_morphism(forward, sl2(H))) == sl2(H)
    assert morphism_inverse_residual(forward) == 0


@pytest.mark.parametrize("morphism", [
    identity_morphism(HEISENBERG),
    theta_charlier(),
    theta_exp(),
    theta_exp(1),
    theta_sqrt_c(Fraction(1, 3)),
    theta_sqrt_c(Fraction(-2)),
    theta_parabolic(),
    theta_parabolic_inverse(),
    antipode(SL2),
    antipode(HEISENBERG),
    transpose_sl2(),
])
def test_exact_morphisms_preserve_brackets(morphism):
    assert not morphism.is_float_only()
    assert morphism_bracket_residual(morphism) == 0
    assert morphism_inverse_residual(morphism) == 0


def test_theta_phi_brackets():
    assert morphism_bracket_residual(theta_phi(1.1)) < 1e-12
    assert morphism_inverse_residual(theta_phi(1.1)) < 1e-12
    assert morphism_bracket_residual(theta_phi_printed(1.1)) > 1e-3
    with pytest.raises(ParameterDomainError):
        theta_phi(4.0)


def test_float_morphism_in_exact_mode():
    with pytest.raises(ExactModeError):
        apply_morphism(theta_phi(1.0), sl2(H), ArithmeticMode.Exact)
    assert theta_sqrt_c_from_c(Fraction(1, 2)).is_float_only()
    assert not theta_sqrt_c_from_c(Fraction(1, 4)).is_float_only()


def test_casimir_invariance():
    assert casimir_invariance_residual(theta_sqrt_c(Fraction(1, 2))) == 0
    assert casimir_invariance_residual(theta_parabolic()) == 0
    assert casimir_invariance_residual(theta_phi(0.9)) < 1e-12
    with pytest.raises(ParameterDomainError):
        casimir_invariance_residual(theta_charlier())


def test_star_compatibility():
    assert star_compatibility_residual(theta_charlier(), StarName.Heisenberg, StarName.Heisenberg) == 0
    assert star_compatibility_residual(theta_sqrt_c(Fraction(1, 2)), StarName.Su11, StarName.Su11) == 0
    assert star_compatibility_residual(theta_parabolic(), StarName.Isl2R, StarName.Su11) == 0
    assert star_compatibility_residual(theta_phi(1.3), StarName.Su11, StarName.Isl2R) < 1e-12
    assert star_compatibility_residual(theta_parabolic(), StarName.Su11, StarName.Su11) > 0


def test_compose_with_inverse_is_identity():
    theta = theta_parabolic()
    both = compose(theta.inverse(), theta)
    for symbol in SL2.generators:
        assert both.image(symbol) == sl2(symbol)


@pytest.mark.parametrize("c", [Fraction(1, 4), Fraction(4, 9), Fraction(9)])
def test_sqrt_c_element_identities(c):
    assert ef_sqrt_c_residual(c) == 0
    assert ef_sqrt_c_residual(c, printed_order=True) > 0
    assert ef_difference_residual(c) == 0


def test_sqrt_c_elements_need_rational_root():
    with pytest.raises(ParameterDomainError):
        ef_sqrt_c_residual(Fraction(1, 2))
    with pytest.raises(ParameterDomainError):
        named_element(NamedElement.HSqrtC, c=1)
