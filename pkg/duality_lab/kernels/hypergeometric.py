import math
from typing import Sequence


def terminating_sum(upper: Sequence[object], lower: Sequence[object], z, terms: int):
    """
    sum_{m=0}^{terms} prod (a)_m / prod (b)_m z^m / m!
    Works over any field the arguments live in (fractions, complex floats, sympy)
    """
    total = 0
    term = 1
    for m in range(terms + 1):
        total = total + term
        if m == terms:
            break
        numerator = math.prod((a + m for a in upper), start=1)
        if numerator == 0:
            break
        denominator = math.prod((b + m for b in lower), start=1) * (m + 1)
        term = term * numerator * z / denominator
    return total


def hyp2f0(n: int, x: int, z):
    """2F0(-n, -x; ; z), a polynomial in z of degree min(n, x)"""
    return terminating_sum((-n, -x), (), z, min(n, x))


def hyp2f1(n: int, b, c, z):
    """2F1(-n, b; c; z), terminating through the -n parameter"""
    return terminating_sum((-n, b), (c,), z, n)


def hyp1f1(n: int, c, z):
    """1F1(-n; c; z)"""
    return terminating_sum((-n,), (c,), z, n)
