import math
from fractions import Fraction
from typing import Optional

import sympy

from duality_lab.algebra.lie_algebra import E, F, H, SL2, StarName
from duality_lab.common.errors import ParameterDomainError, UnknownTypeError
from duality_lab.common.logger import Logger
from duality_lab.common.scalars import ArithmeticMode, exact_sqrt, parse_rational, to_sympy
from duality_lab.kernels.weights import WeightFunction, gamma, meixner_pollaczek, neg_binomial
from duality_lab.representations.carriers import X, CarrierKind, ExpPolynomialCarrier, PolynomialCarrier, \
    SequenceCarrier
from duality_lab.representations.operators import BandedOperator, DifferentialOperator, LinearOperator, \
    ShiftOperator
from duality_lab.representations.representation import C_KEY, DEFAULT_MAXDEG, DEFAULT_TRUNC, J_KEY, K_KEY, \
    MAXDEG_KEY, PHI_KEY, PRINTED_KEY, TRUNC_KEY, FunctionRepresentation, RepresentationType, \
    SequenceRepresentation, check_carrier_kind
from duality_lab.representations.representations_loader import RepresentationsLoader

logger = Logger("su11")


def _positive_k(config: dict) -> Fraction:
    if K_KEY not in config:
        raise ParameterDomainError("su(1,1) representation needs parameter k")
    k = parse_rational(config[K_KEY])
    if k <= 0:
        raise ParameterDomainError(f"su(1,1) representation needs k > 0 [k: {k}]")
    return k


def _phi(config: dict) -> float:
    if PHI_KEY not in config:
        raise ParameterDomainError("rho_k needs parameter phi")
    phi = float(config[PHI_KEY])
    if not 0 < phi < math.pi:
        raise ParameterDomainError(f"rho_k needs 0 < phi < pi [phi: {phi}]")
    return phi


class PiK(SequenceRepresentation):
    """
    Discrete series on functions of n:
    H -> 2(k+n), [E f](n) = n/sqrt(c) f(n-1), [F f](n) = -sqrt(c)(2k+n) f(n+1)
    k = -j/2 on the closed carrier {0..j} gives the exclusion variant
    """

    def __init__(self, k, c=Fraction(1), trunc: int = DEFAULT_TRUNC, closed: bool = False):
        c = parse_rational(c)
        if c <= 0:
            raise ParameterDomainError(f"pi_k needs c > 0 [c: {c}]")
        root = exact_sqrt(c)
        mode = ArithmeticMode.Exact
        if root is None:
            logger.debug(f"sqrt(c) is irrational, pi_k falls back to float [c: {c}]")
            root = math.sqrt(c)
            mode = ArithmeticMode.Float
            k = float(k)
        super().__init__(SL2, SequenceCarrier(trunc, mode, closed), {K_KEY: k, C_KEY: c, TRUNC_KEY: trunc})
        self.__k = k
        self.__c = c
        self.__root = root
        self.__operators = {
            H: BandedOperator({0: lambda n: 2 * (k + n)}),
            E: BandedOperator({-1: lambda n: n / root}),
            F: BandedOperator({1: lambda n: -root * (2 * k + n)}),
        }

    @staticmethod
    def create_representation(config: dict) -> 'PiK':
        check_carrier_kind(config, CarrierKind.TruncatedSequence)
        c = config.get(C_KEY, 1)
        if J_KEY in config:
            j = int(config[J_KEY])
            if j < 1:
                raise ParameterDomainError(f"Exclusion variant needs j >= 1 [j: {j}]")
            return PiK(Fraction(-j, 2), c, j, closed=True)
        return PiK(_positive_k(config), c, int(config.get(TRUNC_KEY, DEFAULT_TRUNC)))

    @staticmethod
    def representation_type() -> RepresentationType:
        return RepresentationType.PiK

    @property
    def k(self):
        return self.__k

    @property
    def c(self):
        return self.__c

    @property
    def root(self):
        return self.__root

    def casimir_value(self):
        return 2 * self.__k * (self.__k - 1)

    def operator(self, symbol: str) -> BandedOperator:
        if symbol not in self.__operators:
            raise UnknownTypeError(f"No operator for generator [generator: {symbol}, representation: {self.label()}]")
        return self.__operators[symbol]

    def weight(self) -> Optional[WeightFunction]:
        if self.__k > 0 and 0 < self.__c < 1:
            return neg_binomial(self.__k, self.__c)
        return None

    def star_name(self) -> StarName:
        return StarName.Su11


class SigmaK(FunctionRepresentation):
    """
    Differential representation on polynomials, a *-representation for the
    star H -> -H, E -> -E, F -> -F against the Gamma(2k) density
    H -> 2x d/dx + (2k - x), E -> (i/2) x, F -> 2i x d2/dx2 + 2i(2k - x) d/dx - (i/2)(4k - x)
    The printed operator set is the negative of this one and satisfies [E,F] = -H
    """

    def __init__(self, k, max_degree: int = DEFAULT_MAXDEG, printed: bool = False):
        super().__init__(SL2, PolynomialCarrier(max_degree, ArithmeticMode.Exact),
                         {K_KEY: k, MAXDEG_KEY: max_degree, PRINTED_KEY: printed})
        self.__k = k
        kk = to_sympy(k)
        i = sympy.I
        sign = -1 if printed else 1
        half_i = i * sympy.Rational(1, 2)
        self.__operators = {
            H: DifferentialOperator([sign * (2 * kk - X), sign * 2 * X]),
            E: DifferentialOperator([sign * half_i * X]),
            F: DifferentialOperator([-sign * half_i * (4 * kk - X), sign * 2 * i * (2 * kk - X), sign * 2 * i * X]),
        }

    @staticmethod
    def create_representation(config: dict) -> 'SigmaK':
        check_carrier_kind(config, CarrierKind.Polynomial)
        return SigmaK(_positive_k(config), int(config.get(MAXDEG_KEY, DEFAULT_MAXDEG)),
                      bool(config.get(PRINTED_KEY, False)))

    @staticmethod
    def representation_type() -> RepresentationType:
        return RepresentationType.SigmaK

    @property
    def k(self):
        return self.__k

    def operator(self, symbol: str) -> DifferentialOperator:
        if symbol not in self.__operators:
            raise UnknownTypeError(f"No operator for generator [generator: {symbol}, representation: {self.label()}]")
        return self.__operators[symbol]

    def weight(self) -> Optional[WeightFunction]:
        return gamma(self.__k)

    def star_name(self) -> StarName:
        return StarName.Isl2R


class RhoK(FunctionRepresentation):
    """
    Difference representation on e^{phi x} p(x):
    H -> -2ix, [E f](x) = (k + ix) f(x - i), [F f](x) = (k - ix) f(x + i)
    """

    def __init__(self, k, phi: float, max_degree: int = DEFAULT_MAXDEG, printed: bool = False):
        super().__init__(SL2, ExpPolynomialCarrier(phi, max_degree),
                         {K_KEY: k, PHI_KEY: phi, MAXDEG_KEY: max_degree, PRINTED_KEY: printed})
        self.__k = k
        self.__phi = phi
        kk = to_sympy(k)
        i = sympy.I
        if printed:
            self.__operators = {
                H: ShiftOperator({0: 2 * i * X}, phi),
                E: ShiftOperator({1: kk - i * X}, phi),
                F: ShiftOperator({-1: -(kk + i * X)}, phi),
            }
        else:
            self.__operators = {
                H: ShiftOperator({0: -2 * i * X}, phi),
                E: ShiftOperator({-1: kk + i * X}, phi),
                F: ShiftOperator({1: kk - i * X}, phi),
            }

    @staticmethod
    def create_representation(config: dict) -> 'RhoK':
        check_carrier_kind(config, CarrierKind.ExpPolynomial)
        return RhoK(_positive_k(config), _phi(config), int(config.get(MAXDEG_KEY, DEFAULT_MAXDEG)),
                    bool(config.get(PRINTED_KEY, False)))

    @staticmethod
    def representation_type() -> RepresentationType:
        return RepresentationType.RhoK

    @property
    def k(self):
        return self.__k

    @property
    def phi(self) -> float:
        return self.__phi

    def operator(self, symbol: str) -> LinearOperator:
        if symbol not in self.__operators:
            raise UnknownTypeError(f"No operator for generator [generator: {symbol}, representation: {self.label()}]")
        return self.__operators[symbol]

    def weight(self) -> Optional[WeightFunction]:
        return meixner_pollaczek(self.__k, self.__phi)

    def star_name(self) -> StarName:
        return StarName.Isl2R


RepresentationsLoader.register_representation(PiK)
RepresentationsLoader.register_representation(SigmaK)
RepresentationsLoader.register_representation(RhoK)
