from abc import ABC, abstractmethod
from enum import Enum
from typing import Callable, List, Optional, Sequence

import sympy

from duality_lab.algebra.element import AlgebraElement, Word
from duality_lab.algebra.lie_algebra import LieAlgebraSpec, StarName
from duality_lab.algebra.tensor import TensorElement
from duality_lab.common.errors import AlgebraMismatchError, CarrierMismatchError, ExactModeError, \
    FactorMismatchError, ParameterDomainError
from duality_lab.common.scalars import ArithmeticMode, is_exact, scale_value, to_sympy
from duality_lab.kernels.weights import WeightFunction
from duality_lab.representations.carriers import Carrier, CarrierKind, SequenceCarrier, site_symbol
from duality_lab.representations.operators import BandedOperator, DifferentialOperator, LinearOperator


C_KEY = "c"
K_KEY = "k"
J_KEY = "j"
PHI_KEY = "phi"
TRUNC_KEY = "trunc"
MAXDEG_KEY = "maxdeg"
PRINTED_KEY = "printed"
CARRIER_KEY = "carrier"

DEFAULT_TRUNC = 24
DEFAULT_MAXDEG = 16


class RepresentationType(str, Enum):
    RhoC = "rho-c"
    SigmaC = "sigma-c"
    PiK = "pi-k"
    SigmaK = "sigma-k"
    RhoK = "rho-k"


class Representation(ABC):
    """
    Generators acting as linear operators on a carrier, extended to words
    (rho(XY) = rho(X) o rho(Y)), sums and tensor products
    """

    def __init__(self, algebra: LieAlgebraSpec, carrier: Carrier, params: dict):
        self.__algebra = algebra
        self.__carrier = carrier
        self.__params = dict(params)

    @staticmethod
    @abstractmethod
    def create_representation(config: dict) -> 'Representation':
        pass

    @staticmethod
    @abstractmethod
    def representation_type() -> RepresentationType:
        pass

    @abstractmethod
    def operator(self, symbol: str) -> LinearOperator:
        pass

    @abstractmethod
    def weight(self) -> Optional[WeightFunction]:
        pass

    @abstractmethod
    def star_name(self) -> StarName:
        """Star structure the weight makes this a *-representation for"""
        pass

    @property
    def algebra(self) -> LieAlgebraSpec:
        return self.__algebra

    @property
    def carrier(self) -> Carrier:
        return self.__carrier

    @property
    def mode(self) -> ArithmeticMode:
        return self.__carrier.mode

    @property
    def params(self) -> dict:
        return dict(self.__params)

    def label(self) -> str:
        args = ",".join(f"{k}={v}" for k, v in self.__params.items())
        return f"{self.representation_type().value}({args})"

    def shift_radius(self, x: AlgebraElement) -> int:
        """Largest total shift of the words in x"""
        return max((sum(self.operator(s).shift_radius for s in word) for word in x.terms), default=0)

    def __check(self, x) -> None:
        if x.algebra != self.__algebra:
            raise AlgebraMismatchError(f"Element and representation over different algebras [representation: {self.label()}]")
        if self.mode == ArithmeticMode.Exact and not all(is_exact(c) for c in x.terms.values()):
            raise ExactModeError(f"Float coefficients in an exact representation [representation: {self.label()}]")

    @abstractmethod
    def apply_generator(self, symbol: str, f, site: int = 0):
        pass

    def apply_word(self, word: Word, f, site: int = 0):
        for symbol in reversed(word):
            f = self.apply_generator(symbol, f, site)
        return f

    def apply_element(self, x: AlgebraElement, f, site: int = 0):
        self.__check(x)
        return self.__carrier.combine((coef, self.apply_word(word, f, site)) for word, coef in x.terms.items())


class SequenceRepresentation(Representation):
    """Representation on a truncated sequence carrier through banded operators"""

    @abstractmethod
    def operator(self, symbol: str) -> BandedOperator:
        pass

    def apply_generator(self, symbol: str, f, site: int = 0):
        carrier: SequenceCarrier = self.carrier
        carrier.check(f, site)
        return self.operator(symbol).apply(f, carrier, site)

    def act_at(self, x: AlgebraElement, func: Callable[[int], object], n: int):
        """[rho(x) func](n) evaluated pointwise, no truncation involved"""
        if x.algebra != self.algebra:
            raise AlgebraMismatchError(f"Element and representation over different algebras [representation: {self.label()}]")
        cap = self.carrier.n_max if self.carrier.closed else None
        total = 0
        for word, coef in x.terms.items():
            total = total + scale_value(coef, self.__word_at(word, func, n, cap))
        return total

    def __word_at(self, word: Word, func: Callable[[int], object], n: int, cap: Optional[int]):
        if not word:
            return func(n)
        rest = word[1:]
        return self.operator(word[0]).apply_at(lambda m: self.__word_at(rest, func, m, cap), n, cap)


class FunctionRepresentation(Representation):
    """Representation on polynomial (or e^{phi x} polynomial) carrier functions"""

    def apply_generator(self, symbol: str, f, site: int = 0):
        result = self.operator(symbol).apply(to_sympy(f), site_symbol(site))
        self.carrier.check(result, site)
        return result

    def act_at_jet(self, x: AlgebraElement, point: float, jet: Sequence[complex]) -> complex:
        """[rho(x) f](point) for linear x from the derivatives (f, f', f'') of f at point"""
        if x.algebra != self.algebra:
            raise AlgebraMismatchError(f"Element and representation over different algebras [representation: {self.label()}]")
        total = 0j
        for word, coef in x.terms.items():
            if len(word) > 1:
                raise ParameterDomainError(f"Pointwise action needs a linear element [word: {word}]")
            if not word:
                total += complex(coef) * jet[0]
                continue
            op = self.operator(word[0])
            if not isinstance(op, DifferentialOperator):
                raise CarrierMismatchError(f"Pointwise jet action needs a differential operator [generator: {word[0]}]")
            total += complex(coef) * op.apply_jet(point, jet)
        return total


def apply_tensor(reps: List[Representation], y: TensorElement, f):
    """(rho_1 (x) ... (x) rho_N)(y) applied to a product carrier function"""
    if len(reps) != y.factor_count:
        raise FactorMismatchError(f"Representation count differs from factor count [reps: {len(reps)}, factors: {y.factor_count}]")
    kinds = {rep.carrier.kind() for rep in reps}
    if len(kinds) != 1:
        raise CarrierMismatchError(f"Tensor factors on different carrier kinds [kinds: {sorted(k.value for k in kinds)}]")
    for rep in reps:
        if rep.algebra != y.algebra:
            raise AlgebraMismatchError(f"Tensor element and representation over different algebras [representation: {rep.label()}]")
    terms = []
    for key, coef in y.terms.items():
        g = f
        for site, (rep, word) in enumerate(zip(reps, key)):
            g = rep.apply_word(word, g, site)
        terms.append((coef, g))
    return reps[0].carrier.combine(terms)


def check_carrier_kind(config: dict, expected: CarrierKind) -> None:
    requested = config.get(CARRIER_KEY)
    if requested is not None and requested != expected.value:
        raise CarrierMismatchError(f"Representation lives on another carrier [requested: {requested}, "
                                   f"expected: {expected.value}]")
