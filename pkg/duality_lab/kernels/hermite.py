import math
from fractions import Fraction

import sympy

from duality_lab.common.scalars import parse_rational, to_sympy
from duality_lab.kernels.duality_kernel import C_KEY, KernelFamily, RowKernel, parse_positive
from duality_lab.kernels.kernels_loader import KernelsLoader


def scaled_hermite(n: int, symbol: sympy.Symbol, c) -> sympy.Expr:
    """
    h_n = (2c)^{-n/2} H_n(x / sqrt(2c)), built from h_{n+1} = (x/c) h_n - (n/c) h_{n-1}
    so the coefficients stay rational for every rational c
    """
    c = to_sympy(c)
    previous, current = sympy.Integer(0), sympy.Integer(1)
    for m in range(n):
        previous, current = current, sympy.expand((symbol * current - m * previous) / c)
    return current


class HermiteKernel(RowKernel):
    """H(n, x; c) = e^{c/2} (2c)^{-n/2} H_n(x / sqrt(2c))"""

    def __init__(self, c):
        c = parse_rational(c)
        super().__init__({C_KEY: c})
        self.__c = c

    @staticmethod
    def create_kernel(config: dict) -> 'HermiteKernel':
        return HermiteKernel(parse_positive(config, C_KEY, "Hermite"))

    @staticmethod
    def kernel_family() -> KernelFamily:
        return KernelFamily.Hermite

    @property
    def c(self) -> Fraction:
        return self.__c

    def row(self, n: int, symbol: sympy.Symbol) -> sympy.Expr:
        return scaled_hermite(int(n), symbol, self.__c)

    def prefactor(self, n, x) -> float:
        return math.exp(float(self.__c) / 2)

    def float_value(self, n, x) -> float:
        c = float(self.__c)
        x = float(x)
        previous, current = 0.0, 1.0
        for m in range(int(n)):
            previous, current = current, (x * current - m * previous) / c
        return current


def hermite_relations_residual(n_max: int) -> sympy.Expr:
    """
    Physicists' polynomials (c = 1/2): d/dy H_n = 2n H_{n-1} and (-d/dy + 2y) H_n = H_{n+1},
    plus agreement with sympy's own Hermite polynomials, largest coefficient deviation
    """
    y = sympy.Symbol("y", real=True)
    half = Fraction(1, 2)
    worst = sympy.Integer(0)
    for n in range(n_max + 1):
        h_n = scaled_hermite(n, y, half)
        raising = sympy.expand(-sympy.diff(h_n, y) + 2 * y * h_n - scaled_hermite(n + 1, y, half))
        reference = sympy.expand(h_n - sympy.hermite(n, y))
        deviations = [raising, reference]
        if n > 0:
            deviations.append(sympy.expand(sympy.diff(h_n, y) - 2 * n * scaled_hermite(n - 1, y, half)))
        for deviation in deviations:
            if deviation != 0:
                worst = max(worst, max(abs(coef) for coef in sympy.Poly(deviation, y).coeffs()))
    return worst


KernelsLoader.register_kernel(HermiteKernel)
