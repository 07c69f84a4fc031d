import math
from typing import Iterable, Tuple

import numpy as np
from scipy import special

from duality_lab.common.errors import ConvergenceError, ParameterDomainError, SupportError
from duality_lab.common.logger import Logger
from duality_lab.common.scalars import parse_rational
from duality_lab.kernels.duality_kernel import K_KEY, JetKernel, KernelFamily, parse_positive
from duality_lab.kernels.kernels_loader import KernelsLoader

logger = Logger("bessel")


class BesselKernel(JetKernel):
    """
    J(x, y; k) = e^{(x+y)/2} (xy)^{1/2-k} J_{2k-1}(sqrt(xy))
               = e^{(x+y)/2} 2^{1-2k} / Gamma(2k) 0F1(; 2k; -xy/4)
    """

    def __init__(self, k):
        k = parse_rational(k)
        if k <= 0:
            raise ParameterDomainError(f"Bessel kernel needs k > 0 [k: {k}]")
        super().__init__({K_KEY: k})
        self.__k = k
        self.__b = 2 * float(k)
        self.__scale = math.exp((1 - self.__b) * math.log(2) - special.gammaln(self.__b))

    @staticmethod
    def create_kernel(config: dict) -> 'BesselKernel':
        return BesselKernel(parse_positive(config, K_KEY, "Bessel"))

    @staticmethod
    def kernel_family() -> KernelFamily:
        return KernelFamily.Bessel

    @property
    def k(self):
        return self.__k

    def _series(self, z: float) -> Tuple[float, float, float]:
        """0F1(; b; z) and its first two z derivatives"""
        b = self.__b
        values = (special.hyp0f1(b, z), special.hyp0f1(b + 1, z) / b, special.hyp0f1(b + 2, z) / (b * (b + 1)))
        if not all(np.isfinite(v) for v in values):
            raise ConvergenceError(f"0F1 series did not converge [b: {b}, z: {z}]")
        return values

    def prefactor(self, x, y) -> float:
        return math.exp((float(x) + float(y)) / 2)

    def jet(self, x: float, y: float, slot: int) -> Tuple[float, float, float]:
        x, y = float(x), float(y)
        if x < 0 or y < 0:
            raise SupportError(f"Bessel kernel lives on the positive quadrant [x: {x}, y: {y}]")
        if slot == 1:
            x, y = y, x
        g, dg, d2g = self._series(-x * y / 4)
        # chain rule through z = -xy/4
        g_x = -y / 4 * dg
        g_xx = y * y / 16 * d2g
        front = self.prefactor(x, y) * self.__scale
        return front * g, front * (g / 2 + g_x), front * (g / 4 + g_x + g_xx)

    def float_value(self, x, y) -> float:
        return self.jet(x, y, 0)[0] / self.prefactor(x, y)


def bessel_jv_residual(k, points: Iterable[Tuple[float, float]]) -> float:
    """Largest relative gap to e^{(x+y)/2} (xy)^{1/2-k} J_{2k-1}(sqrt(xy)) over strictly positive points"""
    kernel = BesselKernel(k)
    nu = 2 * float(kernel.k) - 1
    worst = 0.0
    for x, y in points:
        product = x * y
        reference = kernel.prefactor(x, y) * product ** (-nu / 2) * special.jv(nu, math.sqrt(product))
        value = kernel.jet(x, y, 0)[0]
        worst = max(worst, abs(value - reference) / max(abs(reference), 1e-300))
    return worst


def bessel_eigen_residual(k, points: Iterable[Tuple[float, float]]) -> float:
    """
    Largest relative deviation of sigma_k(F) J(., y) from -(i/2) y J(x, y), with
    sigma_k(F) = 2ix d^2 + 2i(2k - x) d - (i/2)(4k - x) acting on x
    """
    kernel = BesselKernel(k)
    k = float(kernel.k)
    worst = 0.0
    for x, y in points:
        value, first, second = kernel.jet(x, y, 0)
        applied = 2j * x * second + 2j * (2 * k - x) * first - 0.5j * (4 * k - x) * value
        expected = -0.5j * y * value
        worst = max(worst, abs(applied - expected) / max(abs(expected), abs(value), 1e-300))
    logger.debug(f"Bessel eigen residual [k: {k}, residual: {worst}]")
    return worst


KernelsLoader.register_kernel(BesselKernel)
