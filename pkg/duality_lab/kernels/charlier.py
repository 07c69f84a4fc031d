import math
from fractions import Fraction
from typing import Tuple

from duality_lab.common.errors import SupportError
from duality_lab.common.scalars import parse_rational
from duality_lab.kernels.duality_kernel import C_KEY, DualityKernel, KernelFamily, SlotKind, parse_positive
from duality_lab.kernels.hypergeometric import hyp2f0
from duality_lab.kernels.kernels_loader import KernelsLoader


def _check_index(value, name: str) -> int:
    if int(value) != value or value < 0:
        raise SupportError(f"Charlier kernel lives on nonnegative integers [{name}: {value}]")
    return int(value)


class CharlierKernel(DualityKernel):
    """C(n, x; c) = e^c 2F0(-n, -x; ; -1/c), self-dual in (n, x)"""

    def __init__(self, c):
        c = parse_rational(c)
        super().__init__({C_KEY: c})
        self.__c = c

    @staticmethod
    def create_kernel(config: dict) -> 'CharlierKernel':
        return CharlierKernel(parse_positive(config, C_KEY, "Charlier"))

    @staticmethod
    def kernel_family() -> KernelFamily:
        return KernelFamily.Charlier

    @staticmethod
    def slots() -> Tuple[SlotKind, SlotKind]:
        return SlotKind.Discrete, SlotKind.Discrete

    @property
    def c(self) -> Fraction:
        return self.__c

    def bare(self, n, x) -> Fraction:
        n, x = _check_index(n, "n"), _check_index(x, "x")
        return Fraction(hyp2f0(n, x, -1 / self.__c))

    def prefactor(self, n, x) -> float:
        return math.exp(float(self.__c))

    def float_value(self, n, x) -> float:
        """c C_{n+1} = (n + c - x) C_n - n C_{n-1}"""
        n, x = _check_index(n, "n"), _check_index(x, "x")
        c = float(self.__c)
        previous, current = 0.0, 1.0
        for m in range(n):
            previous, current = current, ((m + c - x) * current - m * previous) / c
        return current


def charlier_relations_residual(c, n_max: int) -> Fraction:
    """
    Largest violation over n, x <= n_max of
    n C_{n-1}(x) = c C_n(x) - c C_n(x+1) and c C_{n+1}(x) = c C_n(x) - x C_n(x-1)
    """
    kernel = CharlierKernel(c)
    c = kernel.c
    worst = Fraction(0)
    for n in range(n_max + 1):
        for x in range(n_max + 1):
            if n > 0:
                lowering = n * kernel.bare(n - 1, x) - (c * kernel.bare(n, x) - c * kernel.bare(n, x + 1))
                worst = max(worst, abs(lowering))
            if x > 0:
                raising = c * kernel.bare(n + 1, x) - (c * kernel.bare(n, x) - x * kernel.bare(n, x - 1))
                worst = max(worst, abs(raising))
    return worst


KernelsLoader.register_kernel(CharlierKernel)
