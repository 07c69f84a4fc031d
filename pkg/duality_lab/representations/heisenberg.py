from typing import Optional

from duality_lab.algebra.lie_algebra import A, A_DAG, HEISENBERG, Z, StarName
from duality_lab.common.errors import ParameterDomainError, UnknownTypeError
from duality_lab.common.scalars import ArithmeticMode, parse_rational
from duality_lab.kernels.weights import WeightFunction, gaussian, poisson
from duality_lab.representations.carriers import X, CarrierKind, PolynomialCarrier, SequenceCarrier
from duality_lab.representations.operators import BandedOperator, DifferentialOperator
from duality_lab.representations.representation import C_KEY, DEFAULT_MAXDEG, DEFAULT_TRUNC, MAXDEG_KEY, \
    TRUNC_KEY, FunctionRepresentation, RepresentationType, SequenceRepresentation, check_carrier_kind
from duality_lab.representations.representations_loader import RepresentationsLoader


def _positive_c(config: dict):
    if C_KEY not in config:
        raise ParameterDomainError("Heisenberg representations need parameter c")
    c = parse_rational(config[C_KEY])
    if c <= 0:
        raise ParameterDomainError(f"Heisenberg representations need c > 0 [c: {c}]")
    return c


class RhoC(SequenceRepresentation):
    """[a f](n) = n f(n-1), [a_dag f](n) = c f(n+1), Z = c on functions of n"""

    def __init__(self, c, trunc: int = DEFAULT_TRUNC):
        super().__init__(HEISENBERG, SequenceCarrier(trunc, ArithmeticMode.Exact), {C_KEY: c, TRUNC_KEY: trunc})
        self.__c = c
        self.__operators = {
            A: BandedOperator({-1: lambda n: n}),
            A_DAG: BandedOperator({1: lambda n: c}),
            Z: BandedOperator({0: lambda n: c}),
        }

    @staticmethod
    def create_representation(config: dict) -> 'RhoC':
        check_carrier_kind(config, CarrierKind.TruncatedSequence)
        return RhoC(_positive_c(config), int(config.get(TRUNC_KEY, DEFAULT_TRUNC)))

    @staticmethod
    def representation_type() -> RepresentationType:
        return RepresentationType.RhoC

    @property
    def c(self):
        return self.__c

    def operator(self, symbol: str) -> BandedOperator:
        if symbol not in self.__operators:
            raise UnknownTypeError(f"No operator for generator [generator: {symbol}, representation: {self.label()}]")
        return self.__operators[symbol]

    def weight(self) -> Optional[WeightFunction]:
        return poisson(self.__c)

    def star_name(self) -> StarName:
        return StarName.Heisenberg


class SigmaC(FunctionRepresentation):
    """a = x - c d/dx, a_dag = c d/dx, Z = c on polynomials"""

    def __init__(self, c, max_degree: int = DEFAULT_MAXDEG):
        super().__init__(HEISENBERG, PolynomialCarrier(max_degree, ArithmeticMode.Exact),
                         {C_KEY: c, MAXDEG_KEY: max_degree})
        self.__c = c
        self.__operators = {
            A: DifferentialOperator([X, -c]),
            A_DAG: DifferentialOperator([0, c]),
            Z: DifferentialOperator([c]),
        }

    @staticmethod
    def create_representation(config: dict) -> 'SigmaC':
        check_carrier_kind(config, CarrierKind.Polynomial)
        return SigmaC(_positive_c(config), int(config.get(MAXDEG_KEY, DEFAULT_MAXDEG)))

    @staticmethod
    def representation_type() -> RepresentationType:
        return RepresentationType.SigmaC

    @property
    def c(self):
        return self.__c

    def operator(self, symbol: str) -> DifferentialOperator:
        if symbol not in self.__operators:
            raise UnknownTypeError(f"No operator for generator [generator: {symbol}, representation: {self.label()}]")
        return self.__operators[symbol]

    def weight(self) -> Optional[WeightFunction]:
        return gaussian(self.__c)

    def star_name(self) -> StarName:
        return StarName.Heisenberg


RepresentationsLoader.register_representation(RhoC)
RepresentationsLoader.register_representation(SigmaC)
