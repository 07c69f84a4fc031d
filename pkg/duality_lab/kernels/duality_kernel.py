from abc import ABC, abstractmethod
from enum import Enum
from typing import List, Sequence, Tuple

import sympy

from duality_lab.common.errors import FactorMismatchError, ParameterDomainError
from duality_lab.common.scalars import parse_rational

C_KEY = "c"
K_KEY = "k"
J_KEY = "j"
PHI_KEY = "phi"
SCALE_KEY = "scale"


class KernelFamily(str, Enum):
    Charlier = "charlier"
    Hermite = "hermite"
    Meixner = "meixner"
    Laguerre = "laguerre"
    Krawtchouk = "krawtchouk"
    Bessel = "bessel"
    ExpKernel = "exp"
    MeixnerPollaczek = "meixner-pollaczek"


class KernelMode(str, Enum):
    # prefactor stripped, exact where the family is polynomial
    Bare = "bare"
    Normalized = "normalized"


class SlotKind(str, Enum):
    Discrete = "discrete"
    Continuous = "continuous"


class DualityKernel(ABC):
    """
    K(a, b) = prefactor(a, b) * bare(a, b)
    The first slot is the left process variable, the second the right one
    """

    def __init__(self, params: dict):
        self.__params = dict(params)

    @staticmethod
    @abstractmethod
    def create_kernel(config: dict) -> 'DualityKernel':
        pass

    @staticmethod
    @abstractmethod
    def kernel_family() -> KernelFamily:
        pass

    @staticmethod
    @abstractmethod
    def slots() -> Tuple[SlotKind, SlotKind]:
        pass

    @abstractmethod
    def bare(self, a, b):
        pass

    @abstractmethod
    def prefactor(self, a, b):
        pass

    @property
    def params(self) -> dict:
        return dict(self.__params)

    def label(self) -> str:
        args = ",".join(f"{k}={v}" for k, v in self.__params.items())
        return f"{self.kernel_family().value}({args})"

    def float_value(self, a, b):
        """Bare value in floating point, polynomial families override this with their recurrence"""
        value = self.bare(a, b)
        return complex(value) if isinstance(value, complex) else float(value)

    def evaluate(self, a, b, mode: KernelMode = KernelMode.Normalized):
        if KernelMode(mode) == KernelMode.Bare:
            return self.bare(a, b)
        return self.prefactor(a, b) * self.float_value(a, b)


class RowKernel(DualityKernel):
    """Discrete first slot, the row n -> K(n, .) is a polynomial (times a fixed factor) in the second slot"""

    @staticmethod
    def slots() -> Tuple[SlotKind, SlotKind]:
        return SlotKind.Discrete, SlotKind.Continuous

    @abstractmethod
    def row(self, n: int, symbol: sympy.Symbol) -> sympy.Expr:
        """Bare K(n, .) as a polynomial in symbol"""
        pass

    def bare(self, a, b):
        symbol = sympy.Dummy("x")
        return self.row(a, symbol).subs(symbol, b)


class JetKernel(DualityKernel):
    """Continuous in both slots, evaluated through derivatives at points"""

    @staticmethod
    def slots() -> Tuple[SlotKind, SlotKind]:
        return SlotKind.Continuous, SlotKind.Continuous

    @abstractmethod
    def jet(self, x: float, y: float, slot: int) -> Tuple[complex, complex, complex]:
        """(K, dK, d2K) at (x, y), derivatives in the given slot (0 for x, 1 for y)"""
        pass

    def bare(self, a, b):
        return self.jet(a, b, 0)[0] / self.prefactor(a, b)


class ProductKernel:
    """D(a, b) = prod_j K_j(a_j, b_j) over sites"""

    def __init__(self, kernels: Sequence[DualityKernel]):
        if not kernels:
            raise ParameterDomainError("Product kernel needs at least one site")
        families = {k.kernel_family() for k in kernels}
        if len(families) != 1:
            raise ParameterDomainError(f"Product kernel mixes families [families: {sorted(f.value for f in families)}]")
        self.__kernels: List[DualityKernel] = list(kernels)

    @property
    def kernels(self) -> List[DualityKernel]:
        return list(self.__kernels)

    @property
    def sites(self) -> int:
        return len(self.__kernels)

    def family(self) -> KernelFamily:
        return self.__kernels[0].kernel_family()

    def evaluate(self, a: Sequence, b: Sequence, mode: KernelMode = KernelMode.Normalized):
        if len(a) != self.sites or len(b) != self.sites:
            raise FactorMismatchError(f"State length differs from kernel sites [sites: {self.sites}, "
                                      f"states: {len(a)}, {len(b)}]")
        value = 1
        for kernel, left, right in zip(self.__kernels, a, b):
            value = value * kernel.evaluate(left, right, mode)
        return value


def parse_positive(config: dict, key: str, family: str):
    if key not in config:
        raise ParameterDomainError(f"{family} kernel needs parameter {key}")
    value = parse_rational(config[key])
    if value <= 0:
        raise ParameterDomainError(f"{family} kernel needs {key} > 0 [{key}: {value}]")
    return value
