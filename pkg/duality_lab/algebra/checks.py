from itertools import product
from typing import Optional

from duality_lab.algebra.element import AlgebraElement, commutator, star
from duality_lab.algebra.lie_algebra import H, SL2, LieAlgebraSpec, StarName
from duality_lab.algebra.morphisms import AlgebraMorphism, MorphismKind, apply_morphism, theta_charlier
from duality_lab.algebra.named_elements import NamedElement, casimir, named_element, r_element, y_heisenberg
from duality_lab.algebra.tensor import TensorElement
from duality_lab.common.errors import ParameterDomainError
from duality_lab.common.scalars import exact_sqrt, parse_rational


def _gens(algebra: LieAlgebraSpec):
    return [AlgebraElement.generator(algebra, g) for g in algebra.generators]


def antisymmetry_residual(algebra: LieAlgebraSpec) -> float:
    return max((commutator(x, y) + commutator(y, x)).max_abs_coefficient()
               for x, y in product(_gens(algebra), repeat=2))


def jacobi_residual(algebra: LieAlgebraSpec) -> float:
    residual = 0.0
    for x, y, z in product(_gens(algebra), repeat=3):
        total = commutator(x, commutator(y, z)) + commutator(y, commutator(z, x)) + commutator(z, commutator(x, y))
        residual = max(residual, total.max_abs_coefficient())
    return residual


def star_involution_residual(algebra: LieAlgebraSpec, star_name: StarName) -> float:
    gens = _gens(algebra)
    samples = gens + [x * y for x, y in product(gens, repeat=2)]
    return max((star(star(x, star_name), star_name) - x).max_abs_coefficient() for x in samples)


def star_antihomomorphism_residual(algebra: LieAlgebraSpec, star_name: StarName) -> float:
    """[X,Y]* = [Y*,X*] on generator pairs"""
    return max((star(commutator(x, y), star_name)
                - commutator(star(y, star_name), star(x, star_name))).max_abs_coefficient()
               for x, y in product(_gens(algebra), repeat=2))


def morphism_bracket_residual(m: AlgebraMorphism) -> float:
    residual = 0.0
    for x, y in product(_gens(m.algebra), repeat=2):
        image = apply_morphism(m, commutator(x, y))
        mx, my = apply_morphism(m, x), apply_morphism(m, y)
        expected = commutator(my, mx) if m.kind == MorphismKind.AntiHomomorphism else commutator(mx, my)
        residual = max(residual, (image - expected).max_abs_coefficient())
    return residual


def morphism_inverse_residual(m: AlgebraMorphism, inverse: Optional[AlgebraMorphism] = None) -> float:
    inverse = inverse or m.inverse()
    return max((apply_morphism(inverse, apply_morphism(m, x)) - x).max_abs_coefficient()
               for x in _gens(m.algebra))


def casimir_invariance_residual(m: AlgebraMorphism) -> float:
    if m.algebra != SL2:
        raise ParameterDomainError(f"Casimir invariance needs an sl2 morphism [morphism: {m.label()}]")
    omega = casimir()
    return (apply_morphism(m, omega) - omega).max_abs_coefficient()


def star_compatibility_residual(m: AlgebraMorphism, source: StarName, target: StarName) -> float:
    """max over generators of |theta(X^source) - theta(X)^target|"""
    return max((apply_morphism(m, star(x, source)) - star(apply_morphism(m, x), target)).max_abs_coefficient()
               for x in _gens(m.algebra))


def y_correction_residual() -> float:
    """(theta (x) theta)(Y) - Y - R for the Charlier isomorphism"""
    y = y_heisenberg()
    image = apply_morphism(theta_charlier(), y)
    assert isinstance(image, TensorElement)
    return (image - y - r_element()).max_abs_coefficient()


def ef_sqrt_c_residual(c, printed_order: bool = False) -> float:
    """
    E_sqrtc + F_sqrtc against (1-c)/(4 sqrt c) [H_sqrtc, H]
    The printed bracket order [H, H_sqrtc] flips the sign
    """
    c = parse_rational(c)
    root = exact_sqrt(c)
    if root is None:
        raise ParameterDomainError(f"Exact identity needs a rational square root of c [c: {c}]")
    h = AlgebraElement.generator(SL2, H)
    h_c = named_element(NamedElement.HSqrtC, c=c)
    bracket = commutator(h, h_c) if printed_order else commutator(h_c, h)
    lhs = named_element(NamedElement.ESqrtC, c=c) + named_element(NamedElement.FSqrtC, c=c)
    return (lhs - bracket * ((1 - c) / (4 * root))).max_abs_coefficient()


def ef_difference_residual(c) -> float:
    """E_sqrtc - F_sqrtc = (1-c)/(2 sqrt c) H - (1+c)/(2 sqrt c) H_sqrtc"""
    c = parse_rational(c)
    root = exact_sqrt(c)
    if root is None:
        raise ParameterDomainError(f"Exact identity needs a rational square root of c [c: {c}]")
    h = AlgebraElement.generator(SL2, H)
    lhs = named_element(NamedElement.ESqrtC, c=c) - named_element(NamedElement.FSqrtC, c=c)
    rhs = h * ((1 - c) / (2 * root)) - named_element(NamedElement.HSqrtC, c=c) * ((1 + c) / (2 * root))
    return (lhs - rhs).max_abs_coefficient()


def casimir_centrality_residual() -> float:
    omega = casimir()
    return max(commutator(omega, x).max_abs_coefficient() for x in _gens(SL2))
