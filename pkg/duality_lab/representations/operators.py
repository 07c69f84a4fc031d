import cmath
from abc import ABC, abstractmethod
from typing import Callable, Dict, Mapping, Sequence

import numpy as np
import scipy.sparse
import sympy

from duality_lab.common.scalars import scale_value, to_sympy
from duality_lab.representations.carriers import X, DiscreteFunction, SequenceCarrier


class LinearOperator(ABC):
    @property
    @abstractmethod
    def shift_radius(self) -> int:
        """How many index (or degree) steps the operator can move mass"""
        pass


class BandedOperator(LinearOperator):
    """
    [A f](n) = sum over offsets o of coef_o(n) f(n + o), with f(-1) = 0
    Acts on one site of a product of sequence carriers
    """

    def __init__(self, bands: Mapping[int, Callable[[int], object]]):
        self.__bands = dict(bands)

    @property
    def shift_radius(self) -> int:
        return max((abs(o) for o in self.__bands), default=0)

    @property
    def offsets(self) -> Sequence[int]:
        return sorted(self.__bands)

    def coefficient(self, n: int, offset: int):
        band = self.__bands.get(offset)
        return band(n) if band is not None else 0

    def apply_at(self, func: Callable[[int], object], n: int, cap: int = None):
        total = 0
        for offset, band in self.__bands.items():
            m = n + offset
            if m < 0 or (cap is not None and m > cap):
                continue
            coef = band(n)
            if coef != 0:
                total = total + scale_value(coef, func(m))
        return total

    def apply(self, f: DiscreteFunction, carrier: SequenceCarrier, site: int) -> DiscreteFunction:
        result: DiscreteFunction = {}
        for state, value in f.items():
            m = state[site]
            for offset, band in self.__bands.items():
                n = m - offset
                if n < 0:
                    continue
                coef = band(n)
                if coef == 0 or not carrier.place(n, coef):
                    continue
                target = state[:site] + (n,) + state[site + 1:]
                result[target] = result.get(target, 0) + scale_value(coef, value)
        return {s: v for s, v in result.items() if v != 0}

    def to_matrix(self, n_max: int) -> scipy.sparse.csr_matrix:
        """Matrix on value vectors (f(0)..f(n_max)), entry [n, n + o] = coef_o(n)"""
        matrix = scipy.sparse.lil_matrix((n_max + 1, n_max + 1), dtype=np.complex128)
        for n in range(n_max + 1):
            for offset, band in self.__bands.items():
                m = n + offset
                if 0 <= m <= n_max:
                    coef = band(n)
                    if coef != 0:
                        matrix[n, m] = complex(coef)
        return matrix.tocsr()


class DifferentialOperator(LinearOperator):
    """sum_m c_m(x) d^m/dx^m with coefficients written in the generic variable x"""

    def __init__(self, coefficients: Sequence[object]):
        self.__coefficients = [sympy.expand(to_sympy(c)) for c in coefficients]
        self.__callables = [sympy.lambdify(X, c, modules="numpy") for c in self.__coefficients]

    @property
    def coefficients(self) -> Sequence[sympy.Expr]:
        return list(self.__coefficients)

    @property
    def order(self) -> int:
        return len(self.__coefficients) - 1

    @property
    def shift_radius(self) -> int:
        radius = 0
        for m, coef in enumerate(self.__coefficients):
            if coef != 0:
                radius = max(radius, abs(sympy.degree(coef, X) - m))
        return radius

    def apply(self, expr: sympy.Expr, symbol: sympy.Symbol) -> sympy.Expr:
        total = sympy.Integer(0)
        for m, coef in enumerate(self.__coefficients):
            if coef == 0:
                continue
            derivative = sympy.diff(expr, symbol, m) if m else expr
            total += coef.subs(X, symbol) * derivative
        return sympy.expand(total)

    def apply_jet(self, point: float, jet: Sequence[complex]) -> complex:
        """Value at point from the function's derivatives (f, f', f'', ...) there"""
        total = 0j
        for m, coef in enumerate(self.__callables):
            if self.__coefficients[m] != 0:
                total += complex(coef(point)) * jet[m]
        return total


class ShiftOperator(LinearOperator):
    """
    [A f](x) = sum over s of coef_s(x) f(x + s i) on e^{phi x} p(x), acting on p:
    f(x + s i) = e^{phi x} e^{i s phi} p(x + s i)
    """

    def __init__(self, terms: Mapping[int, object], phi: float):
        self.__terms: Dict[int, sympy.Expr] = {s: sympy.expand(to_sympy(c)) for s, c in terms.items()}
        self.__phi = float(phi)

    @property
    def shift_radius(self) -> int:
        return max((abs(s) for s in self.__terms), default=0)

    @property
    def shifts(self) -> Sequence[int]:
        return sorted(self.__terms)

    def coefficient(self, shift: int) -> sympy.Expr:
        return self.__terms.get(shift, sympy.Integer(0))

    def apply(self, expr: sympy.Expr, symbol: sympy.Symbol) -> sympy.Expr:
        total = sympy.Integer(0)
        for shift, coef in self.__terms.items():
            moved = expr.subs(symbol, symbol + shift * sympy.I) if shift else expr
            phase = to_sympy(cmath.exp(1j * shift * self.__phi)) if shift else sympy.Integer(1)
            total += coef.subs(X, symbol) * phase * moved
        return sympy.expand(total)
