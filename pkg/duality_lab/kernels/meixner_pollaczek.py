import cmath
import math
from typing import Iterable

import mpmath
import sympy

from duality_lab.common.errors import ParameterDomainError
from duality_lab.common.scalars import parse_rational, to_sympy
from duality_lab.kernels.duality_kernel import K_KEY, PHI_KEY, KernelFamily, RowKernel, parse_positive
from duality_lab.kernels.hypergeometric import hyp2f1
from duality_lab.kernels.kernels_loader import KernelsLoader

# |1 - e^{-2i phi}| exceeds 1 for phi > pi/6, the double precision sum cancels badly at high degree
PRECISE_DIGITS = 40


class MeixnerPollaczekKernel(RowKernel):
    """
    P(n, x; k, phi) = e^{x phi} n! / (2k)_n P_n^{(k)}(x; phi)
    The bare row p_n = e^{i n phi} 2F1(-n, k + ix; 2k; 1 - e^{-2i phi}) is real on the real line
    Complex arguments x +- i are accepted everywhere
    """

    def __init__(self, k, phi: float):
        k = parse_rational(k)
        phi = float(phi)
        if k <= 0:
            raise ParameterDomainError(f"Meixner-Pollaczek kernel needs k > 0 [k: {k}]")
        if not 0 < phi < math.pi:
            raise ParameterDomainError(f"Meixner-Pollaczek kernel needs 0 < phi < pi [phi: {phi}]")
        super().__init__({K_KEY: k, PHI_KEY: phi})
        self.__k = k
        self.__phi = phi

    @staticmethod
    def create_kernel(config: dict) -> 'MeixnerPollaczekKernel':
        if PHI_KEY not in config:
            raise ParameterDomainError("Meixner-Pollaczek kernel needs parameter phi")
        return MeixnerPollaczekKernel(parse_positive(config, K_KEY, "Meixner-Pollaczek"), float(config[PHI_KEY]))

    @staticmethod
    def kernel_family() -> KernelFamily:
        return KernelFamily.MeixnerPollaczek

    @property
    def k(self):
        return self.__k

    @property
    def phi(self) -> float:
        return self.__phi

    def row(self, n: int, symbol: sympy.Symbol) -> sympy.Expr:
        phi = sympy.Float(self.__phi)
        k = to_sympy(self.__k)
        z = 1 - sympy.exp(-2 * sympy.I * phi)
        series = hyp2f1(int(n), k + sympy.I * symbol, 2 * k, z)
        return sympy.expand(sympy.N(sympy.exp(sympy.I * int(n) * phi) * series))

    def series_value(self, n: int, x) -> complex:
        """p_n(x) straight from the terminating sum, for any complex x"""
        k = float(self.__k)
        z = 1 - cmath.exp(-2j * self.__phi)
        return cmath.exp(1j * n * self.__phi) * hyp2f1(int(n), k + 1j * complex(x), 2 * k, z)

    def precise_series_value(self, n: int, x, digits: int = PRECISE_DIGITS) -> complex:
        """p_n(x) from the terminating sum carried out in mpmath at the given number of digits"""
        with mpmath.workdps(digits):
            phi = mpmath.mpf(self.__phi)
            k = mpmath.mpf(self.__k.numerator) / self.__k.denominator
            z = 1 - mpmath.expj(-2 * phi)
            value = mpmath.expj(int(n) * phi) * hyp2f1(int(n), k + 1j * mpmath.mpmathify(x), 2 * k, z)
            return complex(value)

    def prefactor(self, n, x) -> complex:
        value = cmath.exp(complex(x) * self.__phi)
        return value.real if isinstance(x, (int, float)) else value

    def float_value(self, n, x) -> complex:
        """(2k + m) p_{m+1} = (2x sin phi + 2(m + k) cos phi) p_m - m p_{m-1}"""
        k = float(self.__k)
        s, c = math.sin(self.__phi), math.cos(self.__phi)
        x = complex(x)
        previous, current = 0.0, 1.0 + 0j
        for m in range(int(n)):
            previous, current = current, ((2 * x * s + 2 * (m + k) * c) * current - m * previous) / (2 * k + m)
        return current


def mp_recurrence_residual(k, phi: float, n: int, points: Iterable[float]) -> float:
    """Largest relative gap between the recurrence and the terminating sum at degrees up to n"""
    kernel = MeixnerPollaczekKernel(k, phi)
    worst = 0.0
    for x in points:
        for m in range(n + 1):
            series = kernel.precise_series_value(m, x)
            worst = max(worst, abs(kernel.float_value(m, x) - series) / max(abs(series), 1.0))
    return worst


def mp_difference_residual(k, phi: float, n: int, points: Iterable[float]) -> float:
    """
    2(n + k) sin(phi) p_n(x)
      = -i e^{i phi} (k - ix) p_n(x + i) + 2x cos(phi) p_n(x) + i e^{-i phi} (k + ix) p_n(x - i)
    """
    kernel = MeixnerPollaczekKernel(k, phi)
    k = float(kernel.k)
    worst = 0.0
    for x in points:
        left = 2 * (n + k) * math.sin(phi) * kernel.float_value(n, x)
        right = (-1j * cmath.exp(1j * phi) * (k - 1j * x) * kernel.float_value(n, x + 1j)
                 + 2 * x * math.cos(phi) * kernel.float_value(n, x)
                 + 1j * cmath.exp(-1j * phi) * (k + 1j * x) * kernel.float_value(n, x - 1j))
        worst = max(worst, abs(left - right) / max(abs(left), 1.0))
    return worst


KernelsLoader.register_kernel(MeixnerPollaczekKernel)
