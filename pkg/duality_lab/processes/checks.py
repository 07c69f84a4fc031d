import math
from fractions import Fraction
from typing import List, Optional

import sympy

from duality_lab.common.concurrency import parallel_map
from duality_lab.common.errors import ParameterDomainError
from duality_lab.common.logger import Logger
from duality_lab.common.scalars import ArithmeticMode, magnitude, to_sympy
from duality_lab.kernels.weights import WeightFunction, binomial, gamma, gaussian, neg_binomial, poisson
from duality_lab.processes.diffusion import DiffusionGenerator
from duality_lab.processes.generator import MarkovGenerator, interior_states, product_basis
from duality_lab.processes.generators_loader import build_generator_algebraic, build_generator_direct
from duality_lab.processes.jump import JumpGenerator
from duality_lab.processes.process_spec import GeneratorVariant, ProcessFamily, ProcessSpec
from duality_lab.representations.carriers import site_symbols
from duality_lab.verification_report import CheckKind, ResidualAccumulator, VerificationReport, value_size

logger = Logger("process_checks")

FLOAT_TOLERANCE = 1e-12
REVERSIBILITY_DEGREE = 3
DEFAULT_WEIGHT_C = Fraction(1, 3)


def _mode(spec: ProcessSpec) -> ArithmeticMode:
    return ArithmeticMode.Float if spec.family == ProcessFamily.HYP else ArithmeticMode.Exact


def _tolerance(spec: ProcessSpec) -> float:
    return FLOAT_TOLERANCE if _mode(spec) == ArithmeticMode.Float else 0.0


def _compare(acc: ResidualAccumulator, lhs, rhs, scale: float = 0.0) -> None:
    if isinstance(lhs, dict):
        for state in set(lhs) | set(rhs):
            acc.add(lhs.get(state, 0), rhs.get(state, 0), scale)
    else:
        acc.add(sympy.expand(lhs), sympy.expand(rhs), scale)


def _action_scale(generator: MarkovGenerator) -> float:
    """Size of L applied to the square of the first site variable, a function no generator conserves"""
    return value_size(generator.apply(site_symbols(generator.spec.sites)[0] ** 2))


def _is_literal_control(spec: ProcessSpec) -> bool:
    if spec.variant != GeneratorVariant.Printed:
        return False
    if spec.family == ProcessFamily.HYP:
        return True
    return spec.family == ProcessFamily.BEP and len(set(spec.k_values())) > 1


def generator_equivalence(spec: ProcessSpec, workers: Optional[int] = None) -> VerificationReport:
    """Largest gap between the direct formula and the algebraic pair sum on interior basis functions"""
    direct = build_generator_direct(spec)
    algebraic = build_generator_algebraic(spec)
    scale = 0.0 if spec.is_discrete() else _action_scale(direct)

    def residual(f) -> ResidualAccumulator:
        acc = ResidualAccumulator()
        _compare(acc, direct.apply(f), algebraic.apply(f), scale)
        return acc

    acc = ResidualAccumulator()
    for partial in parallel_map(residual, product_basis(spec), workers):
        acc.merge(partial)
    notes = []
    if spec.variant == GeneratorVariant.Printed and spec.family == ProcessFamily.BEP:
        notes.append("literal drift -2(k_i x_i - k_j x_j) disagrees with the algebraic form when k_i != k_j")
    if spec.variant == GeneratorVariant.Printed and spec.family == ProcessFamily.HYP:
        notes.append("literal factor 2 and shift k_i k_j do not match the pair sum")
    kind = CheckKind.NegativeControl if _is_literal_control(spec) else CheckKind.Identity
    report = acc.report(f"generator-equivalence:{spec.label()}", _mode(spec), _tolerance(spec),
                        relative=_mode(spec) == ArithmeticMode.Float, kind=kind, notes=notes)
    logger.debug(f"Generator equivalence [case: {report.case}, residual: {report.max_abs_residual}]")
    return report


def conservation_residual(generator: MarkovGenerator) -> VerificationReport:
    """L 1 and L (sum of site variables) on interior points or as polynomials"""
    spec = generator.spec
    acc = ResidualAccumulator()
    if isinstance(generator, JumpGenerator):
        for state in interior_states(spec):
            rate = magnitude(generator.total_rate(state))
            acc.add(generator.apply_at(lambda s: 1, state), 0, rate)
            acc.add(generator.apply_at(lambda s: sum(s), state), 0, rate * max(1, sum(state)))
    elif spec.is_discrete():
        raise ParameterDomainError(f"Pointwise conservation needs a jump generator [generator: {generator.label()}]")
    else:
        total = sympy.Add(*site_symbols(spec.sites))
        scale = _action_scale(generator)
        acc.add(sympy.expand(generator.apply(sympy.Integer(1))), 0, scale)
        acc.add(sympy.expand(generator.apply(total)), 0, scale)
    return acc.report(f"conservation:{generator.label()}", _mode(spec), _tolerance(spec),
                      relative=_mode(spec) == ArithmeticMode.Float)


def stationary_weights(spec: ProcessSpec, weight_c=DEFAULT_WEIGHT_C) -> List[WeightFunction]:
    """Per-site factors of the reversible product measure"""
    family = spec.family
    if family == ProcessFamily.IRW:
        return [poisson(spec.c) for _ in range(spec.sites)]
    if family == ProcessFamily.SIP:
        return [neg_binomial(k, weight_c) for k in spec.k_values()]
    if family == ProcessFamily.SEP:
        return [binomial(j) for j in spec.j]
    if family == ProcessFamily.DIF:
        return [gaussian(spec.c) for _ in range(spec.sites)]
    if family == ProcessFamily.BEP:
        return [gamma(k) for k in spec.k_values()]
    raise ParameterDomainError(f"No reversible product measure for {family.value}")


def _product_mass(weights: List[WeightFunction], state) -> Fraction:
    return math.prod((w.mass(n) for w, n in zip(weights, state)), start=Fraction(1))


def _product_expectation(weights: List[WeightFunction], expr: sympy.Expr, symbols) -> sympy.Expr:
    expr = sympy.expand(expr)
    if expr == 0:
        return sympy.Integer(0)
    total = sympy.Integer(0)
    for degrees, coef in sympy.Poly(expr, *symbols).terms():
        moment = sympy.Integer(1)
        for w, d in zip(weights, degrees):
            moment *= to_sympy(w.moment(d))
        total += coef * moment
    return total


def reversibility_residual(spec: ProcessSpec, weight_c=DEFAULT_WEIGHT_C) -> VerificationReport:
    """
    max over interior basis pairs of |<Lf, g>_w - <f, Lg>_w| for the product measure w
    Delta pairs that are not neighbours contribute zero on both sides and are skipped
    The literal BEP drift with unequal k breaks reversibility and is reported as a negative control
    """
    generator = build_generator_direct(spec)
    weights = stationary_weights(spec, weight_c)
    acc = ResidualAccumulator()
    if isinstance(generator, JumpGenerator):
        for state in interior_states(spec):
            partners = [state] + [target for target, _ in generator.transitions(state)]
            for other in partners:
                lhs = _product_mass(weights, other) * generator.apply_at(lambda s: int(s == state), other)
                rhs = _product_mass(weights, state) * generator.apply_at(lambda s: int(s == other), state)
                acc.add(lhs, rhs)
    elif isinstance(generator, DiffusionGenerator):
        symbols = site_symbols(spec.sites)
        basis = product_basis(spec, degree_cap=REVERSIBILITY_DEGREE)
        images = [generator.apply(f) for f in basis]
        for f, lf in zip(basis, images):
            for g, lg in zip(basis, images):
                acc.add(_product_expectation(weights, lf * g, symbols), _product_expectation(weights, f * lg, symbols))
    else:
        raise ParameterDomainError(f"No reversibility check for {spec.family.value}")
    kind = CheckKind.NegativeControl if _is_literal_control(spec) else CheckKind.Identity
    return acc.report(f"reversibility:{spec.label()}", ArithmeticMode.Exact, 0.0, kind=kind)


def ctmc_property_residual(spec: ProcessSpec, total: int) -> VerificationReport:
    """Row sums and negative off-diagonal entries of the generator matrix on one particle sector"""
    generator = build_generator_direct(spec)
    if not isinstance(generator, JumpGenerator):
        raise ParameterDomainError(f"{spec.family.value} is not a jump process")
    states = generator.sector_states(total)
    matrix = generator.to_dense(states)
    acc = ResidualAccumulator()
    for row in range(len(states)):
        acc.add_residual(abs(float(matrix[row].sum())))
        for col in range(len(states)):
            if col != row and matrix[row, col] < 0:
                acc.add_residual(-float(matrix[row, col]))
    return acc.report(f"ctmc-generator:{spec.label()}:total={total}", ArithmeticMode.Float, FLOAT_TOLERANCE)


def process_reports(spec: ProcessSpec) -> List[VerificationReport]:
    reports = [generator_equivalence(spec), conservation_residual(build_generator_direct(spec))]
    if not spec.is_discrete() and spec.variant == GeneratorVariant.Derived:
        reports.append(conservation_residual(build_generator_algebraic(spec)))
    if spec.family != ProcessFamily.HYP:
        reports.append(reversibility_residual(spec))
    if spec.is_discrete():
        reports.append(ctmc_property_residual(spec, min(spec.caps())))
    return reports


__all__ = ["generator_equivalence", "conservation_residual", "reversibility_residual", "ctmc_property_residual",
           "stationary_weights", "process_reports"]
