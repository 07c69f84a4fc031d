import math
from enum import Enum
from fractions import Fraction
from typing import Dict

import numpy as np
from scipy import special

from duality_lab.common.errors import ParameterDomainError, SupportError
from duality_lab.common.scalars import ArithmeticMode, is_exact


class WeightFamily(str, Enum):
    Poisson = "poisson"
    Gaussian = "gaussian"
    NegBinomial = "neg-binomial"
    Binomial = "binomial"
    Gamma = "gamma"
    MeixnerPollaczek = "meixner-pollaczek"


DISCRETE_FAMILIES = (WeightFamily.Poisson, WeightFamily.NegBinomial, WeightFamily.Binomial)


def pochhammer(a, n: int):
    """Rising factorial (a)_n, exact for exact a"""
    result = Fraction(1) if is_exact(a) else 1.0
    for i in range(n):
        result *= a + i
    return result


class WeightFunction:
    """
    Measure of a *-representation
    Discrete families also give an exact unnormalized mass, the normalizer is kept apart
    NegBinomial is (beta)_n c^n / n! (1 - c)^beta and stays meaningful, though signed, for beta = -j
    """

    def __init__(self, family: WeightFamily, **params):
        self.__family = WeightFamily(family)
        self.__params: Dict[str, object] = dict(params)
        self.__validate()

    def __validate(self) -> None:
        p = self.__params
        if self.__family in (WeightFamily.Poisson, WeightFamily.Gaussian) and not p["c"] > 0:
            raise ParameterDomainError(f"{self.__family.value} weight needs c > 0 [c: {p['c']}]")
        if self.__family == WeightFamily.NegBinomial and not (0 < p["c"] < 1 or p["beta"] < 0):
            raise ParameterDomainError(f"Negative binomial weight needs 0 < c < 1 [c: {p['c']}]")
        if self.__family == WeightFamily.Binomial and not (0 < p["p"] < 1 and int(p["j"]) == p["j"] >= 0):
            raise ParameterDomainError(f"Binomial weight needs integer j and 0 < p < 1 [params: {p}]")
        if self.__family in (WeightFamily.Gamma, WeightFamily.MeixnerPollaczek) and not p["k"] > 0:
            raise ParameterDomainError(f"{self.__family.value} weight needs k > 0 [k: {p['k']}]")
        if self.__family == WeightFamily.MeixnerPollaczek and not 0 < p["phi"] < math.pi:
            raise ParameterDomainError(f"Meixner-Pollaczek weight needs 0 < phi < pi [phi: {p['phi']}]")

    @property
    def family(self) -> WeightFamily:
        return self.__family

    @property
    def params(self) -> Dict[str, object]:
        return dict(self.__params)

    def is_discrete(self) -> bool:
        return self.__family in DISCRETE_FAMILIES

    def check_support(self, point) -> None:
        if self.is_discrete():
            upper = self.__params.get("j") if self.__family == WeightFamily.Binomial else None
            if int(point) != point or point < 0 or (upper is not None and point > upper):
                raise SupportError(f"Point outside the {self.__family.value} support [point: {point}]")
        elif self.__family == WeightFamily.Gamma and not point > 0:
            raise SupportError(f"Gamma weight lives on x > 0 [point: {point}]")

    def mass(self, n: int):
        """Unnormalized discrete mass, exact when the parameters are"""
        self.check_support(n)
        p = self.__params
        if self.__family == WeightFamily.Poisson:
            return p["c"] ** n / math.factorial(n)
        if self.__family == WeightFamily.NegBinomial:
            return pochhammer(p["beta"], n) * p["c"] ** n / math.factorial(n)
        if self.__family == WeightFamily.Binomial:
            ratio = p["p"] / (1 - p["p"])
            return math.comb(int(p["j"]), n) * ratio ** n
        raise ParameterDomainError(f"No discrete mass for a {self.__family.value} weight")

    def normalizer(self) -> float:
        """Factor turning mass(n) into the probability weight"""
        p = self.__params
        if self.__family == WeightFamily.Poisson:
            return math.exp(-float(p["c"]))
        if self.__family == WeightFamily.NegBinomial:
            return (1 - float(p["c"])) ** float(p["beta"])
        if self.__family == WeightFamily.Binomial:
            return (1 - float(p["p"])) ** int(p["j"])
        return 1.0

    def moment(self, m: int):
        """Integral of x^m against the density, exact for rational parameters"""
        p = self.__params
        if self.__family == WeightFamily.Gamma:
            return pochhammer(2 * p["k"], m)
        if self.__family == WeightFamily.Gaussian:
            if m % 2:
                return Fraction(0) if is_exact(p["c"]) else 0.0
            odd_product = math.prod(range(1, m, 2))
            return odd_product * p["c"] ** (m // 2)
        raise ParameterDomainError(f"No closed form moments for a {self.__family.value} weight")

    def evaluate(self, point, mode: ArithmeticMode = ArithmeticMode.Float):
        if self.is_discrete():
            if mode == ArithmeticMode.Exact:
                return self.mass(point)
            return float(self.mass(point)) * self.normalizer()
        self.check_support(point)
        x = float(point)
        p = self.__params
        if self.__family == WeightFamily.Gaussian:
            c = float(p["c"])
            return math.exp(-x * x / (2 * c)) / math.sqrt(2 * math.pi * c)
        if self.__family == WeightFamily.Gamma:
            k2 = 2 * float(p["k"])
            return math.exp((k2 - 1) * math.log(x) - x - special.gammaln(k2))
        return float(self.mp_density(np.array([x]), polynomial_part=False)[0])

    def mp_density(self, x: np.ndarray, polynomial_part: bool = True) -> np.ndarray:
        """
        Meixner-Pollaczek weight with |Gamma(k + ix)|^2 from the complex log-gamma
        polynomial_part folds in e^{2 phi x}, the squared factor of e^{x phi} carrying kernels
        """
        k = float(self.__params["k"])
        phi = float(self.__params["phi"])
        log_gamma = special.loggamma(k + 1j * np.asarray(x, dtype=float))
        exponent = 2 * log_gamma.real + (2 * phi - math.pi if polynomial_part else -math.pi) * x
        log_const = 2 * k * math.log(2 * math.sin(phi)) - math.log(2 * math.pi) - special.gammaln(2 * k)
        return np.exp(exponent + log_const)

    def __repr__(self) -> str:
        args = ", ".join(f"{k}={v}" for k, v in self.__params.items())
        return f"WeightFunction({self.__family.value}, {args})"


def poisson(c) -> WeightFunction:
    return WeightFunction(WeightFamily.Poisson, c=c)


def gaussian(c) -> WeightFunction:
    return WeightFunction(WeightFamily.Gaussian, c=c)


def neg_binomial(k, c) -> WeightFunction:
    return WeightFunction(WeightFamily.NegBinomial, beta=2 * k, c=c)


def binomial(j: int, p=Fraction(1, 2)) -> WeightFunction:
    return WeightFunction(WeightFamily.Binomial, j=j, p=p)


def gamma(k) -> WeightFunction:
    return WeightFunction(WeightFamily.Gamma, k=k)


def meixner_pollaczek(k, phi: float) -> WeightFunction:
    return WeightFunction(WeightFamily.MeixnerPollaczek, k=k, phi=phi)
