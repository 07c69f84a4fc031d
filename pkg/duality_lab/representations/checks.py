import math
from fractions import Fraction
from itertools import product
from typing import List, Optional

import numpy as np
import sympy

from duality_lab.algebra.element import AlgebraElement, star
from duality_lab.algebra.lie_algebra import StarName
from duality_lab.algebra.named_elements import casimir, r_element
from duality_lab.common.errors import ParameterDomainError
from duality_lab.common.logger import Logger
from duality_lab.common.scalars import ArithmeticMode, exact_sqrt, magnitude, parse_rational, scale_value, to_sympy
from duality_lab.kernels.quadrature import quadrature_for
from duality_lab.kernels.weights import WeightFunction
from duality_lab.representations.carriers import CarrierKind, delta, site_symbol
from duality_lab.representations.heisenberg import RhoC
from duality_lab.representations.representation import Representation, SequenceRepresentation, apply_tensor
from duality_lab.representations.su11 import PiK
from duality_lab.verification_report import CheckKind, ResidualAccumulator, VerificationReport

logger = Logger("representation_checks")

FLOAT_TOLERANCE = 1e-12
QUADRATURE_TOLERANCE = 1e-8
MP_QUADRATURE_NODES = 800
MAX_TEST_DEGREE = 8


def _tolerance(rep: Representation) -> float:
    return 0.0 if rep.mode == ArithmeticMode.Exact else FLOAT_TOLERANCE


def _relative(rep: Representation) -> bool:
    return rep.mode == ArithmeticMode.Float


def interior_basis(rep: Representation, margin: int) -> List[object]:
    """Basis functions whose images under words of total shift <= margin stay on the carrier"""
    if isinstance(rep, SequenceRepresentation):
        return [delta(n) for n in rep.carrier.interior(margin)]
    top = min(rep.carrier.max_degree - margin, MAX_TEST_DEGREE)
    return [site_symbol(0) ** d for d in range(top + 1)]


def _apply(rep: Representation, symbol: str, f, flip: Optional[str]):
    g = rep.apply_generator(symbol, f)
    if symbol == flip:
        return rep.carrier.combine([(-1, g)])
    return g


def _apply_linear(rep: Representation, form: AlgebraElement, f, flip: Optional[str]):
    terms = []
    for word, coef in form.terms.items():
        terms.append((coef, _apply(rep, word[0], f, flip) if word else f))
    return rep.carrier.combine(terms)


def bracket_residual(rep: Representation, flip: Optional[str] = None) -> VerificationReport:
    """
    rho([X,Y]) - (rho(X)rho(Y) - rho(Y)rho(X)) on interior basis functions, all generator pairs
    flip negates one generator's operator, the corrupted table must fail
    """
    acc = ResidualAccumulator()
    algebra = rep.algebra
    for f in interior_basis(rep, 2):
        for x, y in product(algebra.generators, repeat=2):
            bracket = AlgebraElement.linear_form(algebra, algebra.bracket(x, y))
            lhs = _apply_linear(rep, bracket, f, flip)
            xy = _apply(rep, x, _apply(rep, y, f, flip), flip)
            yx = _apply(rep, y, _apply(rep, x, f, flip), flip)
            rhs = rep.carrier.combine([(1, xy), (-1, yx)])
            _accumulate(acc, rep, lhs, rhs)
    case = f"bracket:{rep.label()}" + (f":flip-{flip}" if flip else "")
    kind = CheckKind.NegativeControl if flip else CheckKind.Identity
    report = acc.report(case, rep.mode, _tolerance(rep), relative=_relative(rep), kind=kind)
    logger.debug(f"Bracket residual [case: {case}, residual: {report.max_abs_residual}]")
    return report


def _accumulate(acc: ResidualAccumulator, rep: Representation, lhs, rhs) -> None:
    if isinstance(rep, SequenceRepresentation):
        for state in set(lhs) | set(rhs):
            acc.add(lhs.get(state, 0), rhs.get(state, 0))
    else:
        acc.add(sympy.expand(lhs), sympy.expand(rhs))


def _conjugate(value):
    if isinstance(value, sympy.Basic):
        return sympy.conjugate(value)
    return value.conjugate()


def _discrete_pairing(f: dict, g: dict, weight: WeightFunction, exact: bool):
    total = 0
    for state, value in f.items():
        other = g.get(state, 0)
        if other == 0:
            continue
        mass = weight.mass(state[0]) if exact else weight.evaluate(state[0])
        total = total + scale_value(mass, value * _conjugate(other))
    return total


def _polynomial_pairing(f: sympy.Expr, g: sympy.Expr, weight: WeightFunction):
    """Exact pairing of polynomials through the closed form moments"""
    x = site_symbol(0)
    product_poly = sympy.Poly(sympy.expand(f * sympy.conjugate(g)), x)
    total = sympy.Integer(0)
    for (degree,), coef in product_poly.terms():
        moment = weight.moment(degree)
        total += coef * to_sympy(moment)
    return sympy.expand(total)


def _quadrature_pairing(f: sympy.Expr, g: sympy.Expr, weight: WeightFunction) -> complex:
    x = site_symbol(0)
    quadrature = quadrature_for(weight, MP_QUADRATURE_NODES)
    lf = sympy.lambdify(x, f, modules="numpy")
    lg = sympy.lambdify(x, g, modules="numpy")
    return complex(quadrature.integrate(lambda t: np.asarray(lf(t)) * np.conj(np.asarray(lg(t)))))


def _pairing(rep: Representation, f, g, weight: WeightFunction):
    kind = rep.carrier.kind()
    if kind == CarrierKind.TruncatedSequence:
        return _discrete_pairing(f, g, weight, rep.mode == ArithmeticMode.Exact)
    if kind == CarrierKind.Polynomial:
        return _polynomial_pairing(f, g, weight)
    return _quadrature_pairing(f, g, weight)


def _norm(rep: Representation, f, weight: WeightFunction) -> float:
    return math.sqrt(magnitude(_pairing(rep, f, f, weight)))


def star_adjointness_residual(rep: Representation,
                              star_name: Optional[StarName] = None,
                              weight: Optional[WeightFunction] = None) -> VerificationReport:
    """max over generators X and interior basis f, g of |<rho(X)f, g>_w - <f, rho(X*)g>_w|"""
    star_name = star_name or rep.star_name()
    weight = weight or rep.weight()
    if weight is None:
        raise ParameterDomainError(f"Representation has no weight for an adjointness check [representation: {rep.label()}]")
    acc = ResidualAccumulator()
    basis = interior_basis(rep, 1)
    if rep.carrier.kind() != CarrierKind.TruncatedSequence:
        basis = basis[:6]
    norms = [_norm(rep, f, weight) for f in basis]
    for symbol in rep.algebra.generators:
        adjoint = star(AlgebraElement.generator(rep.algebra, symbol), star_name)
        images = [rep.apply_generator(symbol, f) for f in basis]
        adjoint_images = [_apply_linear(rep, adjoint, g, None) for g in basis]
        image_norms = [_norm(rep, h, weight) for h in images]
        adjoint_norms = [_norm(rep, h, weight) for h in adjoint_images]
        for i, j in product(range(len(basis)), repeat=2):
            lhs = _pairing(rep, images[i], basis[j], weight)
            rhs = _pairing(rep, basis[i], adjoint_images[j], weight)
            # Cauchy-Schwarz bounds of both pairings
            acc.add(lhs, rhs, max(image_norms[i] * norms[j], norms[i] * adjoint_norms[j]))
    exact = rep.mode == ArithmeticMode.Exact and rep.carrier.kind() != CarrierKind.ExpPolynomial
    tolerance = 0.0 if exact else QUADRATURE_TOLERANCE
    return acc.report(f"star-adjointness:{rep.label()}:{star_name.value}", rep.mode, tolerance,
                      relative=not exact)


def casimir_scalar_residual(rep: PiK) -> VerificationReport:
    """pi_k(Omega) - 2k(k-1) on interior basis vectors"""
    acc = ResidualAccumulator()
    omega = casimir()
    value = rep.casimir_value()
    for f in interior_basis(rep, 2):
        image = rep.apply_element(omega, f)
        expected = rep.carrier.combine([(value, f)])
        _accumulate(acc, rep, image, expected)
    return acc.report(f"casimir-scalar:{rep.label()}", rep.mode, _tolerance(rep), relative=_relative(rep))


def r_zero_residual(c, trunc: int = 16) -> VerificationReport:
    """(rho_c (x) rho_c)(R) vanishes, R only differs from zero before Z is fixed to c"""
    rep = RhoC(parse_rational(c), trunc)
    r = r_element()
    acc = ResidualAccumulator()
    interior = rep.carrier.interior(2)
    for n1, n2 in product(interior, repeat=2):
        image = apply_tensor([rep, rep], r, delta(n1, n2))
        for value in image.values():
            acc.add(value, 0)
        acc.points += 1
    return acc.report(f"r-zero:{rep.label()}", ArithmeticMode.Exact, 0.0)


def scale_equivalence_check(k, c1, c2, trunc: int = 16, exponent=Fraction(1, 2)) -> VerificationReport:
    """
    (I f)(n) = (c1/c2)^{n e} f(n) intertwines pi_{k,c1} and pi_{k,c2} for e = 1/2
    exact when every square root involved is rational, float otherwise
    """
    k = parse_rational(k)
    c1, c2 = parse_rational(c1), parse_rational(c2)
    if not (0 < c1 < 1 and 0 < c2 < 1):
        raise ParameterDomainError(f"Scale equivalence needs 0 < c1, c2 < 1 [c1: {c1}, c2: {c2}]")
    ratio = c1 / c2
    exponent = parse_rational(exponent)
    if exponent.denominator == 1:
        lam = ratio ** exponent.numerator
    else:
        root = exact_sqrt(ratio) if exponent.denominator == 2 else None
        lam = root ** exponent.numerator if root is not None else float(ratio) ** float(exponent)
    left, right = PiK(k, c1, trunc), PiK(k, c2, trunc)
    exact = isinstance(lam, Fraction) and left.mode == right.mode == ArithmeticMode.Exact
    mode = ArithmeticMode.Exact if exact else ArithmeticMode.Float
    acc = ResidualAccumulator()
    for n in left.carrier.interior(1):
        f = delta(n)
        scaled = {(n,): lam ** n}
        for symbol in left.algebra.generators:
            lhs = {s: v * lam ** s[0] for s, v in left.apply_generator(symbol, f).items()}
            rhs = right.apply_generator(symbol, scaled)
            for state in set(lhs) | set(rhs):
                acc.add(lhs.get(state, 0), rhs.get(state, 0))
    case = f"scale-equivalence:k={k},c1={c1},c2={c2}" + (f",e={exponent}" if exponent != Fraction(1, 2) else "")
    kind = CheckKind.Identity if exponent == Fraction(1, 2) else CheckKind.NegativeControl
    return acc.report(case, mode, 0.0 if exact else FLOAT_TOLERANCE, relative=not exact, kind=kind)


def representation_reports(reps: List[Representation]) -> List[VerificationReport]:
    reports = []
    for rep in reps:
        reports.append(bracket_residual(rep))
        if isinstance(rep, PiK):
            reports.append(casimir_scalar_residual(rep))
        if rep.weight() is not None:
            reports.append(star_adjointness_residual(rep))
    return reports


