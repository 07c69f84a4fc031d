import math
from enum import Enum
from fractions import Fraction
from numbers import Complex, Rational
from typing import Optional, Union

import sympy

from duality_lab.common.errors import ParameterDomainError


class ArithmeticMode(str, Enum):
    Exact = "exact"
    Float = "float"


class GaussianRational:
    """
    Exact complex scalar p + q*i with rational p, q
    Mixing with float or complex operands degrades to a python complex
    """
    __slots__ = ('__re', '__im')

    def __init__(self, re: Union[int, Fraction] = 0, im: Union[int, Fraction] = 0):
        self.__re = Fraction(re)
        self.__im = Fraction(im)

    @staticmethod
    def coerce(value) -> 'GaussianRational':
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, Rational):
            return GaussianRational(value)
        raise TypeError(f"Cannot represent value exactly as a gaussian rational [value: {value!r}]")

    @property
    def real(self) -> Fraction:
        return self.__re

    @property
    def imag(self) -> Fraction:
        return self.__im

    def conjugate(self) -> 'GaussianRational':
        return GaussianRational(self.__re, -self.__im)

    def is_real(self) -> bool:
        return self.__im == 0

    def __add__(self, other):
        if isinstance(other, sympy.Basic):
            return to_sympy(self) + other
        if isinstance(other, (GaussianRational, Rational)):
            other = GaussianRational.coerce(other)
            return GaussianRational(self.__re + other.real, self.__im + other.imag)
        if isinstance(other, Complex):
            return complex(self) + other
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> 'GaussianRational':
        return GaussianRational(-self.__re, -self.__im)

    def __sub__(self, other):
        if isinstance(other, (GaussianRational, Complex, sympy.Basic)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, sympy.Basic):
            return to_sympy(self) * other
        if isinstance(other, (GaussianRational, Rational)):
            other = GaussianRational.coerce(other)
            return GaussianRational(self.__re * other.real - self.__im * other.imag,
                                    self.__re * other.imag + self.__im * other.real)
        if isinstance(other, Complex):
            return complex(self) * other
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, sympy.Basic):
            return to_sympy(self) / other
        if isinstance(other, (GaussianRational, Rational)):
            other = GaussianRational.coerce(other)
            norm = other.real * other.real + other.imag * other.imag
            if norm == 0:
                raise ZeroDivisionError("Division of gaussian rational by zero")
            return self * GaussianRational(other.real / norm, -other.imag / norm)
        if isinstance(other, Complex):
            return complex(self) / other
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, sympy.Basic):
            return other / to_sympy(self)
        if isinstance(other, Rational):
            return GaussianRational(other) / self
        if isinstance(other, Complex):
            return other / complex(self)
        return NotImplemented

    def __pow__(self, exponent: int) -> 'GaussianRational':
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return GaussianRational(1) / (self ** -exponent)
        result = GaussianRational(1)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, GaussianRational):
            return self.__re == other.real and self.__im == other.imag
        if isinstance(other, Rational):
            return self.__im == 0 and self.__re == other
        if isinstance(other, Complex):
            return complex(self) == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.__im == 0:
            return hash(self.__re)
        return hash((self.__re, self.__im))

    def __bool__(self) -> bool:
        return self.__re != 0 or self.__im != 0

    def _sympy_(self) -> sympy.Expr:
        return to_sympy(self)

    def __complex__(self) -> complex:
        return complex(float(self.__re), float(self.__im))

    def __abs__(self) -> float:
        return abs(complex(self))

    def __repr__(self) -> str:
        return f"GaussianRational({self.__re}, {self.__im})"

    def __str__(self) -> str:
        if self.__im == 0:
            return str(self.__re)
        if self.__re == 0:
            return f"{self.__im}i"
        sign = '+' if self.__im > 0 else '-'
        return f"({self.__re}{sign}{abs(self.__im)}i)"


I_UNIT = GaussianRational(0, 1)
Scalar = Union[int, Fraction, GaussianRational, float, complex]


def is_exact(value) -> bool:
    return isinstance(value, (GaussianRational, Rational))


def parse_rational(value) -> Fraction:
    """Parses "p/q", decimal strings and numbers into an exact fraction"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ParameterDomainError(f"Boolean is not a rational parameter [value: {value}]")
    if isinstance(value, (int, str)):
        try:
            return Fraction(value.strip() if isinstance(value, str) else value)
        except (ValueError, ZeroDivisionError):
            raise ParameterDomainError(f"Unparseable rational parameter [value: {value!r}]")
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ParameterDomainError(f"Non finite parameter [value: {value}]")
        return Fraction(repr(value))
    raise ParameterDomainError(f"Unsupported parameter type [value: {value!r}]")


def exact_sqrt(value: Fraction) -> Optional[Fraction]:
    """Square root of a nonnegative fraction when it is itself rational, else None"""
    value = Fraction(value)
    if value < 0:
        return None
    num_root = math.isqrt(value.numerator)
    den_root = math.isqrt(value.denominator)
    if num_root * num_root == value.numerator and den_root * den_root == value.denominator:
        return Fraction(num_root, den_root)
    return None


def to_complex(value) -> complex:
    return complex(value)


def to_sympy(value) -> sympy.Expr:
    if isinstance(value, sympy.Basic):
        return value
    if isinstance(value, GaussianRational):
        return sympy.Rational(value.real.numerator, value.real.denominator) \
            + sympy.I * sympy.Rational(value.imag.numerator, value.imag.denominator)
    if isinstance(value, Fraction):
        return sympy.Rational(value.numerator, value.denominator)
    if isinstance(value, int):
        return sympy.Integer(value)
    if isinstance(value, float):
        return sympy.Float(value)
    if isinstance(value, complex):
        return sympy.Float(value.real) + sympy.I * sympy.Float(value.imag)
    return sympy.sympify(value)


def magnitude(value) -> float:
    """Absolute value of an exact, float or sympy scalar"""
    if isinstance(value, sympy.Basic):
        return float(abs(complex(value.evalf())))
    return abs(complex(value))


def scale_value(coef, value):
    """coef * value, moving exact coefficients into sympy when the value is symbolic"""
    if isinstance(value, sympy.Basic):
        if coef == 1:
            return value
        return to_sympy(coef) * value
    return coef * value
