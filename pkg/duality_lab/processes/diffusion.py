from abc import abstractmethod
from typing import List, Sequence, Tuple

import numpy as np
import sympy

from duality_lab.common.scalars import to_sympy
from duality_lab.processes.generator import MarkovGenerator, Provenance
from duality_lab.processes.process_spec import GeneratorVariant, ProcessFamily, ProcessSpec
from duality_lab.representations.carriers import site_symbols


class DiffusionGenerator(MarkovGenerator):
    """
    L = sum_{i<j} a_ij(x) (d_i - d_j)^2 + b_ij(x) (d_i - d_j)
    Each pair drives x_i and x_j in opposite directions, so sum x is conserved
    """

    @staticmethod
    @abstractmethod
    def create_generator(spec: ProcessSpec) -> 'DiffusionGenerator':
        pass

    @staticmethod
    @abstractmethod
    def process_family() -> ProcessFamily:
        pass

    @staticmethod
    def provenance() -> Provenance:
        return Provenance.DirectFormula

    @abstractmethod
    def pair_coefficients(self, i: int, j: int, x: Sequence) -> Tuple[object, object]:
        """(a_ij, b_ij) at x, x holds symbols or floats"""
        pass

    def apply(self, f: sympy.Expr) -> sympy.Expr:
        symbols = site_symbols(self.sites)
        f = to_sympy(f)
        total = sympy.Integer(0)
        for i, j in self.pairs():
            a, b = self.pair_coefficients(i, j, symbols)
            first = sympy.diff(f, symbols[i]) - sympy.diff(f, symbols[j])
            second = sympy.diff(first, symbols[i]) - sympy.diff(first, symbols[j])
            total += a * second + b * first
        return sympy.expand(total)

    def apply_jet(self, point: Sequence[float], gradient: Sequence[complex], hessian) -> complex:
        """[L f](point) from the gradient and the hessian of f there"""
        total = 0j
        for i, j in self.pairs():
            a, b = self.pair_coefficients(i, j, point)
            second = hessian[i][i] - 2 * hessian[i][j] + hessian[j][j]
            total += float(a) * second + float(b) * (gradient[i] - gradient[j])
        return total

    def pair_increments(self, point: Sequence) -> List[Tuple[int, int, object, object]]:
        """
        (i, j, drift, noise) with dX_i = -dX_j = drift dt + noise dW_ij
        point holds floats or one numpy column per site for a batch of trajectories
        """
        increments = []
        for i, j in self.pairs():
            a, b = self.pair_coefficients(i, j, point)
            increments.append((i, j, b, np.sqrt(np.maximum(2 * np.asarray(a, dtype=float), 0.0))))
        return increments


class DifGenerator(DiffusionGenerator):
    """Attracting Brownian motions: a = c, b = -(x_i - x_j)"""

    def __init__(self, spec: ProcessSpec):
        super().__init__(spec)
        self.__c = spec.c

    @staticmethod
    def create_generator(spec: ProcessSpec) -> 'DifGenerator':
        return DifGenerator(spec)

    @staticmethod
    def process_family() -> ProcessFamily:
        return ProcessFamily.DIF

    def pair_coefficients(self, i: int, j: int, x: Sequence) -> Tuple[object, object]:
        c = to_sympy(self.__c) if isinstance(x[i], sympy.Basic) else float(self.__c)
        return c, -(x[i] - x[j])


class BepGenerator(DiffusionGenerator):
    """
    Energy exchange: a = x_i x_j, b = -2(k_j x_i - k_i x_j)
    The printed variant uses the drift -2(k_i x_i - k_j x_j), equal only when k_i = k_j
    """

    def __init__(self, spec: ProcessSpec):
        super().__init__(spec)
        self.__k = spec.k_values()
        self.__printed = spec.variant == GeneratorVariant.Printed

    @staticmethod
    def create_generator(spec: ProcessSpec) -> 'BepGenerator':
        return BepGenerator(spec)

    @staticmethod
    def process_family() -> ProcessFamily:
        return ProcessFamily.BEP

    def pair_coefficients(self, i: int, j: int, x: Sequence) -> Tuple[object, object]:
        convert = to_sympy if isinstance(x[i], sympy.Basic) else float
        ki, kj = convert(self.__k[i]), convert(self.__k[j])
        if self.__printed:
            return x[i] * x[j], -2 * (ki * x[i] - kj * x[j])
        return x[i] * x[j], -2 * (kj * x[i] - ki * x[j])
