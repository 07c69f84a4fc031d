from itertools import product as cartesian
from typing import Dict, Mapping, Optional, Tuple

from duality_lab.algebra.element import IDENTITY_WORD, AlgebraElement, Word, coerce_coefficient
from duality_lab.algebra.lie_algebra import LieAlgebraSpec
from duality_lab.common.errors import AlgebraMismatchError, FactorMismatchError
from duality_lab.common.scalars import magnitude

TensorWord = Tuple[Word, ...]


class TensorElement:
    """Linear combination of N-fold tensor products of normal ordered words"""

    def __init__(self, algebra: LieAlgebraSpec, factor_count: int, terms: Optional[Mapping[TensorWord, object]] = None):
        if factor_count < 1:
            raise FactorMismatchError(f"Tensor element needs at least one factor [factors: {factor_count}]")
        self.__algebra = algebra
        self.__factor_count = factor_count
        merged: Dict[TensorWord, object] = {}
        for key, coef in (terms or {}).items():
            if len(key) != factor_count:
                raise FactorMismatchError(f"Tensor term with wrong factor count [expected: {factor_count}, got: {len(key)}]")
            # every factor word is normal ordered independently
            expanded = {(): coerce_coefficient(coef)}
            for word in key:
                factor = AlgebraElement(algebra, {tuple(word): 1})
                expanded = {prefix + (w,): c * fc for prefix, c in expanded.items() for w, fc in factor.terms.items()}
            for k, c in expanded.items():
                merged[k] = merged.get(k, 0) + c
        cleaned = {k: c for k, c in merged.items() if c != 0}
        if any(isinstance(c, complex) for c in cleaned.values()):
            cleaned = {k: complex(c) for k, c in cleaned.items()}
        self.__terms = cleaned

    @staticmethod
    def identity(algebra: LieAlgebraSpec, factor_count: int) -> 'TensorElement':
        return TensorElement(algebra, factor_count, {(IDENTITY_WORD,) * factor_count: 1})

    @property
    def algebra(self) -> LieAlgebraSpec:
        return self.__algebra

    @property
    def factor_count(self) -> int:
        return self.__factor_count

    @property
    def terms(self) -> Dict[TensorWord, object]:
        return dict(self.__terms)

    def coefficient(self, key: TensorWord):
        return self.__terms.get(tuple(tuple(w) for w in key), 0)

    def is_zero(self) -> bool:
        return not self.__terms

    def max_abs_coefficient(self) -> float:
        return max((magnitude(c) for c in self.__terms.values()), default=0.0)

    def __check(self, other: 'TensorElement') -> None:
        if other.algebra != self.__algebra:
            raise AlgebraMismatchError(f"Mixed algebra tensor operands [left: {self.__algebra}, right: {other.algebra}]")
        if other.factor_count != self.__factor_count:
            raise FactorMismatchError(f"Tensor factor counts differ [left: {self.__factor_count}, right: {other.factor_count}]")

    def __add__(self, other: 'TensorElement') -> 'TensorElement':
        self.__check(other)
        merged = dict(self.__terms)
        for key, coef in other.terms.items():
            merged[key] = merged.get(key, 0) + coef
        return TensorElement(self.__algebra, self.__factor_count, merged)

    def __neg__(self) -> 'TensorElement':
        return TensorElement(self.__algebra, self.__factor_count, {k: -c for k, c in self.__terms.items()})

    def __sub__(self, other: 'TensorElement') -> 'TensorElement':
        return self + (-other)

    def __mul__(self, other) -> 'TensorElement':
        if not isinstance(other, TensorElement):
            scale = coerce_coefficient(other)
            return TensorElement(self.__algebra, self.__factor_count, {k: c * scale for k, c in self.__terms.items()})
        self.__check(other)
        result = TensorElement(self.__algebra, self.__factor_count)
        for left_key, left_coef in self.__terms.items():
            for right_key, right_coef in other.terms.items():
                factors = [AlgebraElement(self.__algebra, {lw + rw: 1}) for lw, rw in zip(left_key, right_key)]
                result = result + tensor(*factors) * (left_coef * right_coef)
        return result

    def __rmul__(self, other) -> 'TensorElement':
        return self * other

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorElement):
            return NotImplemented
        return other.algebra == self.__algebra and other.factor_count == self.__factor_count \
            and (self - other).is_zero()

    def __hash__(self):
        return hash((self.__algebra, self.__factor_count, frozenset(self.__terms.items())))

    def __repr__(self) -> str:
        if not self.__terms:
            return "0"
        parts = []
        for key, coef in sorted(self.__terms.items(), key=lambda kv: str(kv[0])):
            parts.append(f"{coef}·" + "⊗".join("*".join(w) if w else "1" for w in key))
        return " + ".join(parts)


def tensor(*factors: AlgebraElement) -> TensorElement:
    """Pure tensor product of algebra elements, expanded bilinearly"""
    if not factors:
        raise FactorMismatchError("Tensor product of zero factors")
    algebra = factors[0].algebra
    for factor in factors:
        if factor.algebra != algebra:
            raise AlgebraMismatchError(f"Mixed algebras in tensor product [first: {algebra}, other: {factor.algebra}]")
    terms: Dict[TensorWord, object] = {}
    for combo in cartesian(*(f.terms.items() for f in factors)):
        key = tuple(word for word, _ in combo)
        coef = 1
        for _, c in combo:
            coef = c * coef
        terms[key] = terms.get(key, 0) + coef
    return TensorElement(algebra, len(factors), terms)


def coproduct(x: AlgebraElement) -> TensorElement:
    """Delta(X) = 1 (x) X + X (x) 1 on generators, extended as an algebra morphism"""
    algebra = x.algebra
    one = AlgebraElement.scalar(algebra, 1)
    result = TensorElement(algebra, 2)
    for word, coef in x.terms.items():
        term = TensorElement.identity(algebra, 2)
        for symbol in word:
            gen = AlgebraElement.generator(algebra, symbol)
            term = term * (tensor(one, gen) + tensor(gen, one))
        result = result + term * coef
    return result


def embed_pair(y: TensorElement, i: int, j: int, site_count: int) -> TensorElement:
    """Places the two factors of y at sites i < j (1-based) of an N-fold tensor, identity elsewhere"""
    if y.factor_count != 2:
        raise FactorMismatchError(f"Pair embedding needs a two-factor element [factors: {y.factor_count}]")
    if not (1 <= i < j <= site_count):
        raise IndexError(f"Invalid pair embedding indices [i: {i}, j: {j}, sites: {site_count}]")
    terms: Dict[TensorWord, object] = {}
    for (left, right), coef in y.terms.items():
        key = [IDENTITY_WORD] * site_count
        key[i - 1] = left
        key[j - 1] = right
        terms[tuple(key)] = coef
    return TensorElement(y.algebra, site_count, terms)
