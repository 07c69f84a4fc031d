import math
from enum import Enum
from typing import Callable

import numpy as np
from numpy.polynomial import hermite_e, legendre
from scipy import special

from duality_lab.common.errors import ConvergenceError, ParameterDomainError
from duality_lab.common.logger import Logger
from duality_lab.kernels.weights import WeightFamily, WeightFunction

logger = Logger("quadrature")

TAIL_EPS = 1e-18
MAX_DISCRETE_TERMS = 20000
TAIL_RUN = 5
MIN_DISCRETE_TERMS = 40
MP_MAX_CUT = 40.0
MP_TAIL_EXPONENT = 60.0


class QuadratureRule(str, Enum):
    DiscreteSum = "discrete-sum"
    GaussHermite = "gauss-hermite"
    GaussLaguerre = "gauss-laguerre"
    TruncatedLine = "truncated-line"


class Quadrature:
    """Nodes and weights integrating against a probability density"""

    def __init__(self, rule: QuadratureRule, nodes: np.ndarray, weights: np.ndarray):
        self.__rule = rule
        self.__nodes = np.asarray(nodes, dtype=float)
        self.__weights = np.asarray(weights, dtype=float)

    @property
    def rule(self) -> QuadratureRule:
        return self.__rule

    @property
    def nodes(self) -> np.ndarray:
        return self.__nodes

    @property
    def weights(self) -> np.ndarray:
        return self.__weights

    def size(self) -> int:
        return len(self.__nodes)

    def integrate(self, func: Callable[[np.ndarray], np.ndarray]):
        return np.sum(self.__weights * func(self.__nodes))


def gauss_hermite(m: int, c) -> Quadrature:
    """m-point rule for the N(0, c) density, exact up to degree 2m - 1"""
    nodes, weights = hermite_e.hermegauss(m)
    return Quadrature(QuadratureRule.GaussHermite, nodes * math.sqrt(float(c)), weights / math.sqrt(2 * math.pi))


def gauss_laguerre(m: int, k) -> Quadrature:
    """m-point rule for the Gamma(2k) density x^{2k-1} e^{-x} / Gamma(2k)"""
    alpha = 2 * float(k) - 1
    nodes, weights = special.roots_genlaguerre(m, alpha)
    return Quadrature(QuadratureRule.GaussLaguerre, nodes, weights / special.gamma(alpha + 1))


def truncated_line(m: int, cut: float, density: Callable[[np.ndarray], np.ndarray] = None) -> Quadrature:
    """Gauss-Legendre on [-cut, cut], optionally folding a density into the weights"""
    nodes, weights = legendre.leggauss(m)
    nodes = nodes * cut
    weights = weights * cut
    if density is not None:
        weights = weights * density(nodes)
    return Quadrature(QuadratureRule.TruncatedLine, nodes, weights)


def mp_cut(phi: float) -> float:
    """Half width where e^{-decay |x|} with decay 2 min(phi, pi - phi) is far below double precision"""
    decay = 2 * min(float(phi), math.pi - float(phi))
    return min(MP_MAX_CUT, MP_TAIL_EXPONENT / decay)


def quadrature_for(weight: WeightFunction, m: int) -> Quadrature:
    if weight.family == WeightFamily.Gaussian:
        return gauss_hermite(m, weight.params["c"])
    if weight.family == WeightFamily.Gamma:
        return gauss_laguerre(m, weight.params["k"])
    if weight.family == WeightFamily.MeixnerPollaczek:
        return truncated_line(m, mp_cut(weight.params["phi"]), lambda x: weight.mp_density(x, polynomial_part=True))
    raise ParameterDomainError(f"No quadrature rule for a discrete weight [weight: {weight}]")


def exactness_residual(quadrature: Quadrature, weight: WeightFunction, degree: int) -> float:
    """max over monomials x^d, d <= degree, of |rule(x^d) - moment(d)| relative to the moment"""
    residual = 0.0
    for d in range(degree + 1):
        exact = float(weight.moment(d))
        approx = quadrature.integrate(lambda x: x ** d)
        residual = max(residual, abs(approx - exact) / max(abs(exact), 1.0))
    return residual


def discrete_sum(weight: WeightFunction, func: Callable[[int], complex], tail_eps: float = TAIL_EPS):
    """sum over the support of w(n) func(n), cut once terms stay below tail_eps of the running sum"""
    if weight.family == WeightFamily.Binomial:
        return sum(weight.evaluate(n) * func(n) for n in range(int(weight.params["j"]) + 1))
    total = 0.0
    small = 0
    for n in range(MAX_DISCRETE_TERMS):
        term = float(weight.mass(n)) * func(n)
        total += term
        if n >= MIN_DISCRETE_TERMS and abs(term) <= tail_eps * abs(total):
            small += 1
            if small >= TAIL_RUN:
                return total * weight.normalizer()
        else:
            small = 0
    logger.warn(f"Discrete sum did not reach its tail bound [weight: {weight}]")
    raise ConvergenceError(f"Discrete sum did not converge within {MAX_DISCRETE_TERMS} terms [weight: {weight}]")
