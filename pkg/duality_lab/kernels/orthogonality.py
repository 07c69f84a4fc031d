import math
from fractions import Fraction
from typing import Optional

import sympy

from duality_lab.common.errors import ConvergenceError, ParameterDomainError
from duality_lab.common.logger import Logger
from duality_lab.common.scalars import ArithmeticMode, to_sympy
from duality_lab.kernels.charlier import CharlierKernel
from duality_lab.kernels.duality_kernel import DualityKernel, RowKernel
from duality_lab.kernels.hermite import HermiteKernel
from duality_lab.kernels.laguerre import LaguerreKernel, laguerre_norm
from duality_lab.kernels.meixner import KrawtchoukKernel, MeixnerKernel
from duality_lab.kernels.meixner_pollaczek import MeixnerPollaczekKernel
from duality_lab.kernels.quadrature import Quadrature, QuadratureRule, discrete_sum, quadrature_for
from duality_lab.kernels.weights import WeightFunction, gamma, gaussian, meixner_pollaczek, neg_binomial, \
    pochhammer, poisson
from duality_lab.verification_report import VerificationReport

logger = Logger("orthogonality")

FLOAT_TOLERANCE = 1e-12
LINE_TOLERANCE = 1e-8
LINE_NODES = 800
GAUSS_RULES = (QuadratureRule.GaussHermite, QuadratureRule.GaussLaguerre)


def kernel_weight(kernel: DualityKernel) -> WeightFunction:
    """Probability measure the kernel rows are orthogonal against"""
    if isinstance(kernel, CharlierKernel):
        return poisson(kernel.c)
    if isinstance(kernel, KrawtchoukKernel):
        return WeightFunction("neg-binomial", beta=kernel.beta, c=kernel.c)
    if isinstance(kernel, MeixnerKernel):
        return neg_binomial(kernel.beta / 2, kernel.c)
    if isinstance(kernel, HermiteKernel):
        return gaussian(kernel.c)
    if isinstance(kernel, LaguerreKernel):
        return gamma(kernel.k)
    if isinstance(kernel, MeixnerPollaczekKernel):
        return meixner_pollaczek(kernel.k, kernel.phi)
    raise ParameterDomainError(f"No orthogonality measure for a {kernel.kernel_family().value} kernel")


def squared_norm(kernel: DualityKernel, n: int):
    """<K(n,.), K(n,.)>_w of the bare rows against the probability weight"""
    if isinstance(kernel, CharlierKernel):
        return Fraction(math.factorial(n)) / kernel.c ** n
    if isinstance(kernel, MeixnerKernel):
        # Krawtchouk shares the formula with beta = -j
        return Fraction(math.factorial(n)) / (kernel.c ** n * pochhammer(kernel.beta, n))
    if isinstance(kernel, HermiteKernel):
        return Fraction(math.factorial(n)) / kernel.c ** n
    if isinstance(kernel, (LaguerreKernel, MeixnerPollaczekKernel)):
        return laguerre_norm(n, kernel.k)
    raise ParameterDomainError(f"No orthogonality relation for a {kernel.kernel_family().value} kernel")


def _exact_moment_pairing(kernel: RowKernel, weight: WeightFunction, m: int, n: int) -> Fraction:
    x = sympy.Symbol("x")
    product = sympy.Poly(sympy.expand(kernel.row(m, x) * kernel.row(n, x)), x)
    total = sympy.Integer(0)
    for (degree,), coef in product.terms():
        total += coef * to_sympy(weight.moment(degree))
    return Fraction(int(sympy.numer(total)), int(sympy.denom(total)))


def _finite_pairing(kernel: KrawtchoukKernel, weight: WeightFunction, m: int, n: int) -> Fraction:
    total = sum((weight.mass(x) * kernel.bare(m, x) * kernel.bare(n, x) for x in range(kernel.j + 1)), Fraction(0))
    return total * (1 - kernel.c) ** -kernel.j


def _quadrature_pairing(kernel: RowKernel, quadrature: Quadrature, m: int, n: int):
    return quadrature.integrate(lambda nodes: [kernel.float_value(m, x) * kernel.float_value(n, x) for x in nodes])


def orthogonality_residual(kernel: DualityKernel, m: int, n: int,
                           quadrature: Optional[Quadrature] = None) -> VerificationReport:
    """
    <K(m,.), K(n,.)>_w minus delta_mn ||K(n,.)||^2 on bare rows
    Without a quadrature polynomial rows pair exactly through the weight moments
    """
    weight = kernel_weight(kernel)
    expected = squared_norm(kernel, n) if m == n else Fraction(0)
    mode = ArithmeticMode.Float
    tolerance = FLOAT_TOLERANCE
    if isinstance(kernel, KrawtchoukKernel):
        if m > kernel.j or n > kernel.j:
            raise ParameterDomainError(f"Krawtchouk degrees exceed j [m: {m}, n: {n}, j: {kernel.j}]")
        value, mode, tolerance = _finite_pairing(kernel, weight, m, n), ArithmeticMode.Exact, 0.0
    elif weight.is_discrete():
        value = discrete_sum(weight, lambda x: kernel.float_value(m, x) * kernel.float_value(n, x))
    elif quadrature is None and isinstance(kernel, (HermiteKernel, LaguerreKernel)):
        value, mode, tolerance = _exact_moment_pairing(kernel, weight, m, n), ArithmeticMode.Exact, 0.0
    else:
        if quadrature is None:
            quadrature = quadrature_for(weight, LINE_NODES)
        if quadrature.rule in GAUSS_RULES and 2 * quadrature.size() - 1 < m + n:
            raise ConvergenceError(f"Gauss rule with {quadrature.size()} nodes is not exact at degree {m + n}")
        value = complex(_quadrature_pairing(kernel, quadrature, m, n))
        value = value.real if abs(value.imag) <= FLOAT_TOLERANCE * max(abs(value), 1.0) else value
        if quadrature.rule == QuadratureRule.TruncatedLine:
            tolerance = LINE_TOLERANCE
    residual = abs(value - expected)
    scale = max(abs(float(expected)), 1.0)
    relative = mode == ArithmeticMode.Float
    case = f"orthogonality:{kernel.label()}:m={m},n={n}"
    logger.debug(f"Orthogonality residual [case: {case}, residual: {residual}]")
    return VerificationReport.evaluate(case, mode, float(residual), float(residual) / scale, tolerance,
                                       points_checked=1, relative=relative)
