from fractions import Fraction
from typing import Optional, Tuple

from duality_lab.common.errors import ParameterDomainError, SupportError
from duality_lab.common.scalars import parse_rational
from duality_lab.kernels.duality_kernel import C_KEY, J_KEY, K_KEY, DualityKernel, KernelFamily, SlotKind, \
    parse_positive
from duality_lab.kernels.hypergeometric import hyp2f1
from duality_lab.kernels.kernels_loader import KernelsLoader


class MeixnerKernel(DualityKernel):
    """
    M(n, x; k, c) = 2F1(-n, -x; beta; 1 - 1/c) with beta = 2k
    No prefactor, the kernel is the bare polynomial and is self-dual in (n, x)
    """

    def __init__(self, k, c):
        k, c = parse_rational(k), parse_rational(c)
        if not 0 < c < 1:
            raise ParameterDomainError(f"Meixner kernel needs 0 < c < 1 [c: {c}]")
        if k <= 0:
            raise ParameterDomainError(f"Meixner kernel needs k > 0 [k: {k}]")
        super().__init__({K_KEY: k, C_KEY: c})
        self._beta = 2 * k
        self._c = c
        self._upper: Optional[int] = None

    @staticmethod
    def create_kernel(config: dict) -> 'MeixnerKernel':
        return MeixnerKernel(parse_positive(config, K_KEY, "Meixner"), parse_positive(config, C_KEY, "Meixner"))

    @staticmethod
    def kernel_family() -> KernelFamily:
        return KernelFamily.Meixner

    @staticmethod
    def slots() -> Tuple[SlotKind, SlotKind]:
        return SlotKind.Discrete, SlotKind.Discrete

    @property
    def beta(self) -> Fraction:
        return self._beta

    @property
    def c(self) -> Fraction:
        return self._c

    def _check_index(self, value, name: str) -> int:
        if int(value) != value or value < 0 or (self._upper is not None and value > self._upper):
            raise SupportError(f"Index outside the {self.kernel_family().value} support [{name}: {value}]")
        return int(value)

    def bare(self, n, x) -> Fraction:
        n, x = self._check_index(n, "n"), self._check_index(x, "x")
        return Fraction(hyp2f1(n, -x, self._beta, 1 - 1 / self._c))

    def prefactor(self, n, x) -> float:
        return 1.0

    def float_value(self, n, x) -> float:
        """c (m + beta) M_{m+1} = ((c - 1) x + m + (m + beta) c) M_m - m M_{m-1}"""
        n, x = self._check_index(n, "n"), self._check_index(x, "x")
        c, beta = float(self._c), float(self._beta)
        previous, current = 0.0, 1.0
        for m in range(n):
            previous, current = current, (((c - 1) * x + m + (m + beta) * c) * current - m * previous) / (c * (m + beta))
        return current


class KrawtchoukKernel(MeixnerKernel):
    """Meixner kernel at beta = -j, the exclusion substitution k = -j/2, on {0..j}"""

    def __init__(self, j: int, c):
        j, c = int(j), parse_rational(c)
        if j < 1:
            raise ParameterDomainError(f"Krawtchouk kernel needs j >= 1 [j: {j}]")
        if c <= 0 or c == 1:
            raise ParameterDomainError(f"Krawtchouk kernel needs 0 < c != 1 [c: {c}]")
        DualityKernel.__init__(self, {J_KEY: j, C_KEY: c})
        self._beta = Fraction(-j)
        self._c = c
        self._upper = j

    @staticmethod
    def create_kernel(config: dict) -> 'KrawtchoukKernel':
        if J_KEY not in config:
            raise ParameterDomainError("Krawtchouk kernel needs parameter j")
        return KrawtchoukKernel(int(config[J_KEY]), parse_positive(config, C_KEY, "Krawtchouk"))

    @staticmethod
    def kernel_family() -> KernelFamily:
        return KernelFamily.Krawtchouk

    @property
    def j(self) -> int:
        return self._upper


KernelsLoader.register_kernel(MeixnerKernel)
KernelsLoader.register_kernel(KrawtchoukKernel)
