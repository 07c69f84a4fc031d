import cmath
from fractions import Fraction
from typing import Iterable, Tuple

from duality_lab.common.errors import ParameterDomainError
from duality_lab.common.scalars import parse_rational
from duality_lab.kernels.duality_kernel import C_KEY, SCALE_KEY, JetKernel, KernelFamily, parse_positive
from duality_lab.kernels.kernels_loader import KernelsLoader

CORRECTED_SCALE = Fraction(1, 2)
PRINTED_SCALE = Fraction(1)
FINITE_DIFFERENCE_STEP = 1e-4


class ExpKernel(JetKernel):
    """
    phi(x, y; c) = exp((x^2 + y^2) / 4c - i s xy / c)
    s = 1/2 is the kernel dual for DIF self-duality, s = 1 the literal variant
    """

    def __init__(self, c, scale=CORRECTED_SCALE):
        c, scale = parse_rational(c), parse_rational(scale)
        if c <= 0:
            raise ParameterDomainError(f"Exponential kernel needs c > 0 [c: {c}]")
        if scale <= 0:
            raise ParameterDomainError(f"Exponential kernel needs a positive scale [scale: {scale}]")
        super().__init__({C_KEY: c, SCALE_KEY: scale})
        self.__c = c
        self.__scale = scale

    @staticmethod
    def create_kernel(config: dict) -> 'ExpKernel':
        return ExpKernel(parse_positive(config, C_KEY, "Exponential"), config.get(SCALE_KEY, CORRECTED_SCALE))

    @staticmethod
    def kernel_family() -> KernelFamily:
        return KernelFamily.ExpKernel

    @property
    def c(self) -> Fraction:
        return self.__c

    @property
    def scale(self) -> Fraction:
        return self.__scale

    def prefactor(self, x, y) -> float:
        return 1.0

    def value(self, x: float, y: float) -> complex:
        c, s = float(self.__c), float(self.__scale)
        return cmath.exp((x * x + y * y) / (4 * c) - 1j * s * x * y / c)

    def jet(self, x: float, y: float, slot: int) -> Tuple[complex, complex, complex]:
        x, y = float(x), float(y)
        c, s = float(self.__c), float(self.__scale)
        value = self.value(x, y)
        if slot == 1:
            x, y = y, x
        # d phi / dx = (x / 2c - i s y / c) phi
        rate = x / (2 * c) - 1j * s * y / c
        return value, rate * value, (1 / (2 * c) + rate * rate) * value

    def float_value(self, x, y) -> complex:
        return self.value(float(x), float(y))


def exp_derivative_residual(c, points: Iterable[Tuple[float, float]], scale=CORRECTED_SCALE) -> float:
    """
    c d/dx phi - (x/2 - i s y) phi, and the analytic first and second derivatives
    against central differences, largest relative deviation
    """
    kernel = ExpKernel(c, scale)
    c, s = float(kernel.c), float(kernel.scale)
    h = FINITE_DIFFERENCE_STEP
    worst = 0.0
    for x, y in points:
        value, first, second = kernel.jet(x, y, 0)
        size = max(abs(value), 1e-300)
        worst = max(worst, abs(c * first - (x / 2 - 1j * s * y) * value) / size)
        forward, backward = kernel.value(x + h, y), kernel.value(x - h, y)
        worst = max(worst, abs((forward - backward) / (2 * h) - first) / max(abs(first), size))
        worst = max(worst, abs((forward - 2 * value + backward) / (h * h) - second) / max(abs(second), size))
    return worst


KernelsLoader.register_kernel(ExpKernel)
