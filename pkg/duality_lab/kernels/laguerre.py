import math
from fractions import Fraction
from typing import Optional

import sympy

from duality_lab.common.errors import ExactModeError, ParameterDomainError
from duality_lab.common.scalars import exact_sqrt, parse_rational, to_sympy
from duality_lab.kernels.duality_kernel import C_KEY, K_KEY, KernelFamily, RowKernel, parse_positive
from duality_lab.kernels.hypergeometric import hyp1f1
from duality_lab.kernels.kernels_loader import KernelsLoader


class LaguerreKernel(RowKernel):
    """
    L(n, x; k) = n! c^{-n/2} / (2k)_n L_n^{(2k-1)}(x) = c^{-n/2} 1F1(-n; 2k; x)
    The bare row drops c^{-n/2}, a factor lambda^{n} that commutes with particle conserving generators
    """

    def __init__(self, k, c=Fraction(1)):
        k, c = parse_rational(k), parse_rational(c)
        if k <= 0 or c <= 0:
            raise ParameterDomainError(f"Laguerre kernel needs k, c > 0 [k: {k}, c: {c}]")
        super().__init__({K_KEY: k, C_KEY: c})
        self.__k = k
        self.__c = c

    @staticmethod
    def create_kernel(config: dict) -> 'LaguerreKernel':
        return LaguerreKernel(parse_positive(config, K_KEY, "Laguerre"), parse_rational(config.get(C_KEY, 1)))

    @staticmethod
    def kernel_family() -> KernelFamily:
        return KernelFamily.Laguerre

    @property
    def k(self) -> Fraction:
        return self.__k

    @property
    def c(self) -> Fraction:
        return self.__c

    def row(self, n: int, symbol: sympy.Symbol) -> sympy.Expr:
        return sympy.expand(hyp1f1(int(n), to_sympy(2 * self.__k), symbol))

    def scale(self, n: int) -> Optional[Fraction]:
        """c^{-n/2} when sqrt(c) is rational"""
        root = exact_sqrt(self.__c)
        return None if root is None else root ** -int(n)

    def scaled_row(self, n: int, symbol: sympy.Symbol) -> sympy.Expr:
        scale = self.scale(n)
        if scale is None:
            raise ExactModeError(f"Laguerre scaling c^(-n/2) is irrational [c: {self.__c}]")
        return sympy.expand(to_sympy(scale) * self.row(n, symbol))

    def prefactor(self, n, x) -> float:
        return float(self.__c) ** (-int(n) / 2)

    def float_value(self, n, x) -> float:
        """(2k + m) l_{m+1} = (2m + 2k - x) l_m - m l_{m-1}"""
        k2 = 2 * float(self.__k)
        x = float(x)
        previous, current = 0.0, 1.0
        for m in range(int(n)):
            previous, current = current, ((2 * m + k2 - x) * current - m * previous) / (k2 + m)
        return current


def laguerre_ode_residual(n: int, k) -> sympy.Expr:
    """x l'' + (2k - x) l' + n l for the bare row, zero exactly"""
    x = sympy.Symbol("x", positive=True)
    row = LaguerreKernel(k).row(n, x)
    residual = sympy.expand(x * sympy.diff(row, x, 2) + (to_sympy(2 * parse_rational(k)) - x) * sympy.diff(row, x) + n * row)
    return residual


def laguerre_norm(n: int, k) -> Fraction:
    """Gamma(2k) expectation of the squared bare row, n! / (2k)_n"""
    k = parse_rational(k)
    return Fraction(math.factorial(n)) / math.prod((2 * k + i for i in range(n)), start=Fraction(1))


KernelsLoader.register_kernel(LaguerreKernel)
