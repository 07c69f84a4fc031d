from abc import ABC, abstractmethod
from enum import Enum
from functools import lru_cache
from typing import Dict, Iterable, Tuple

import sympy

from duality_lab.common.errors import CarrierMismatchError, MarginViolationError, ParameterDomainError
from duality_lab.common.scalars import ArithmeticMode, scale_value

State = Tuple[int, ...]
DiscreteFunction = Dict[State, object]

# the generic variable that operator coefficients are written in
X = sympy.Symbol('x', real=True)


class CarrierKind(str, Enum):
    TruncatedSequence = "truncated-sequence"
    Polynomial = "polynomial"
    ExpPolynomial = "exp-polynomial"


@lru_cache(maxsize=None)
def site_symbol(site: int) -> sympy.Symbol:
    """Variable of the (0-based) site in product carrier functions"""
    return sympy.Symbol(f"x{site + 1}", real=True)


def site_symbols(count: int) -> Tuple[sympy.Symbol, ...]:
    return tuple(site_symbol(i) for i in range(count))


class Carrier(ABC):
    def __init__(self, mode: ArithmeticMode):
        self.__mode = mode

    @property
    def mode(self) -> ArithmeticMode:
        return self.__mode

    @staticmethod
    @abstractmethod
    def kind() -> CarrierKind:
        pass

    @abstractmethod
    def zero(self):
        pass

    @abstractmethod
    def combine(self, terms: Iterable[Tuple[object, object]]):
        """Linear combination sum(coef * f) of carrier functions"""
        pass

    @abstractmethod
    def check(self, f, site: int) -> None:
        pass


class SequenceCarrier(Carrier):
    """
    Functions on {0..n_max} per site, stored as sparse maps from state tuples to values
    A closed carrier is the whole state space (SEP occupancies), so values pushed past
    n_max are dropped instead of reported
    """

    def __init__(self, n_max: int, mode: ArithmeticMode = ArithmeticMode.Exact, closed: bool = False):
        super().__init__(mode)
        if n_max < 0:
            raise ParameterDomainError(f"Truncation must be nonnegative [n_max: {n_max}]")
        self.__n_max = n_max
        self.__closed = closed

    @staticmethod
    def kind() -> CarrierKind:
        return CarrierKind.TruncatedSequence

    @property
    def n_max(self) -> int:
        return self.__n_max

    @property
    def closed(self) -> bool:
        return self.__closed

    def interior(self, margin: int) -> range:
        if self.__closed:
            return range(0, self.__n_max + 1)
        return range(0, max(self.__n_max - margin + 1, 0))

    def accepts(self, n: int) -> bool:
        return 0 <= n <= self.__n_max

    def place(self, n: int, value) -> bool:
        """Whether an output value at index n is kept, raising when it leaves an open carrier"""
        if n < 0:
            return False
        if n > self.__n_max:
            if self.__closed or value == 0:
                return False
            raise MarginViolationError(f"Operator pushed mass past the truncation [index: {n}, n_max: {self.__n_max}]")
        return True

    def zero(self) -> DiscreteFunction:
        return {}

    def combine(self, terms: Iterable[Tuple[object, DiscreteFunction]]) -> DiscreteFunction:
        result: DiscreteFunction = {}
        for coef, f in terms:
            for state, value in f.items():
                result[state] = result.get(state, 0) + scale_value(coef, value)
        return {s: v for s, v in result.items() if v != 0}

    def check(self, f: DiscreteFunction, site: int) -> None:
        for state in f:
            if not self.accepts(state[site]):
                raise CarrierMismatchError(f"State outside the carrier [state: {state}, site: {site}, n_max: {self.__n_max}]")


class PolynomialCarrier(Carrier):
    """Polynomials in the site variables of degree at most max_degree per variable"""

    def __init__(self, max_degree: int = 16, mode: ArithmeticMode = ArithmeticMode.Exact):
        super().__init__(mode)
        self.__max_degree = max_degree

    @staticmethod
    def kind() -> CarrierKind:
        return CarrierKind.Polynomial

    @property
    def max_degree(self) -> int:
        return self.__max_degree

    def zero(self) -> sympy.Expr:
        return sympy.Integer(0)

    def combine(self, terms: Iterable[Tuple[object, sympy.Expr]]) -> sympy.Expr:
        return sympy.expand(sympy.Add(*[scale_value(coef, f) for coef, f in terms]))

    def check(self, f: sympy.Expr, site: int) -> None:
        if f == 0:
            return
        degree = sympy.degree(f, site_symbol(site))
        if degree > self.__max_degree:
            raise MarginViolationError(f"Polynomial degree past the carrier bound [degree: {degree}, "
                                       f"max_degree: {self.__max_degree}, site: {site}]")


class ExpPolynomialCarrier(PolynomialCarrier):
    """e^{phi * sum x} p(x), only the polynomial part p is stored"""

    def __init__(self, phi: float, max_degree: int = 16):
        super().__init__(max_degree, ArithmeticMode.Float)
        self.__phi = float(phi)

    @staticmethod
    def kind() -> CarrierKind:
        return CarrierKind.ExpPolynomial

    @property
    def phi(self) -> float:
        return self.__phi


def delta(*state: int) -> DiscreteFunction:
    return {tuple(state): 1}
