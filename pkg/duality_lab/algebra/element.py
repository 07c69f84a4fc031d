from numbers import Complex, Rational
from typing import Dict, Iterable, Mapping, Optional, Tuple

from duality_lab.algebra.lie_algebra import LieAlgebraSpec, StarName
from duality_lab.common.errors import AlgebraMismatchError, UnknownStarError
from duality_lab.common.scalars import GaussianRational, magnitude

Word = Tuple[str, ...]
IDENTITY_WORD: Word = ()


def coerce_coefficient(value):
    if isinstance(value, (GaussianRational, Rational)):
        return GaussianRational.coerce(value)
    if isinstance(value, Complex):
        return complex(value)
    raise TypeError(f"Unsupported coefficient type [value: {value!r}]")


def _unify(terms: Dict[Word, object]) -> Dict[Word, object]:
    if any(isinstance(c, complex) for c in terms.values()):
        return {w: complex(c) for w, c in terms.items()}
    return terms


def _first_inversion(algebra: LieAlgebraSpec, word: Word) -> Optional[int]:
    for pos in range(len(word) - 1):
        if algebra.order(word[pos]) > algebra.order(word[pos + 1]):
            return pos
    return None


def normal_order(algebra: LieAlgebraSpec, terms: Iterable[Tuple[Word, object]]) -> Dict[Word, object]:
    """Rewrites XY -> YX + [X,Y] until every word is sorted by generator order"""
    result: Dict[Word, object] = {}
    pending = [(tuple(w), coerce_coefficient(c)) for w, c in terms]
    while pending:
        word, coef = pending.pop()
        if coef == 0:
            continue
        pos = _first_inversion(algebra, word)
        if pos is None:
            result[word] = result.get(word, 0) + coef
            continue
        x, y = word[pos], word[pos + 1]
        prefix, suffix = word[:pos], word[pos + 2:]
        pending.append((prefix + (y, x) + suffix, coef))
        for gen, bracket_coef in algebra.bracket(x, y).items():
            pending.append((prefix + (gen,) + suffix, coef * bracket_coef))
    return _unify({w: c for w, c in result.items() if c != 0})


class AlgebraElement:
    """
    Element of the universal enveloping algebra, a linear combination of
    normal ordered words with gaussian rational (or complex) coefficients
    """

    def __init__(self, algebra: LieAlgebraSpec, terms: Optional[Mapping[Word, object]] = None):
        for word in (terms or {}):
            for symbol in word:
                if not algebra.has_generator(symbol):
                    raise AlgebraMismatchError(f"Unknown generator for algebra [generator: {symbol}, algebra: {algebra}]")
        self.__algebra = algebra
        self.__terms = normal_order(algebra, (terms or {}).items())

    @staticmethod
    def generator(algebra: LieAlgebraSpec, symbol: str) -> 'AlgebraElement':
        return AlgebraElement(algebra, {(symbol,): 1})

    @staticmethod
    def scalar(algebra: LieAlgebraSpec, value=1) -> 'AlgebraElement':
        return AlgebraElement(algebra, {IDENTITY_WORD: value})

    @staticmethod
    def linear_form(algebra: LieAlgebraSpec, form: Mapping[str, object]) -> 'AlgebraElement':
        return AlgebraElement(algebra, {(g,): c for g, c in form.items()})

    @property
    def algebra(self) -> LieAlgebraSpec:
        return self.__algebra

    @property
    def terms(self) -> Dict[Word, object]:
        return dict(self.__terms)

    def coefficient(self, word: Word):
        return self.__terms.get(tuple(word), 0)

    def is_zero(self) -> bool:
        return not self.__terms

    def is_exact(self) -> bool:
        return all(isinstance(c, GaussianRational) for c in self.__terms.values())

    def max_abs_coefficient(self) -> float:
        return max((magnitude(c) for c in self.__terms.values()), default=0.0)

    def degree(self) -> int:
        return max((len(w) for w in self.__terms), default=0)

    def to_complex(self) -> 'AlgebraElement':
        return AlgebraElement(self.__algebra, {w: complex(c) for w, c in self.__terms.items()})

    def __check(self, other: 'AlgebraElement') -> None:
        if other.algebra != self.__algebra:
            raise AlgebraMismatchError(f"Mixed algebra operands [left: {self.__algebra}, right: {other.algebra}]")

    def __add__(self, other) -> 'AlgebraElement':
        if not isinstance(other, AlgebraElement):
            other = AlgebraElement.scalar(self.__algebra, other)
        self.__check(other)
        merged = dict(self.__terms)
        for word, coef in other.terms.items():
            merged[word] = merged.get(word, 0) + coef
        return AlgebraElement(self.__algebra, merged)

    __radd__ = __add__

    def __neg__(self) -> 'AlgebraElement':
        return AlgebraElement(self.__algebra, {w: -c for w, c in self.__terms.items()})

    def __sub__(self, other) -> 'AlgebraElement':
        return self + (-other)

    def __rsub__(self, other) -> 'AlgebraElement':
        return (-self) + other

    def __mul__(self, other) -> 'AlgebraElement':
        if not isinstance(other, AlgebraElement):
            return AlgebraElement(self.__algebra, {w: c * coerce_coefficient(other) for w, c in self.__terms.items()})
        self.__check(other)
        product = []
        for left_word, left_coef in self.__terms.items():
            for right_word, right_coef in other.terms.items():
                product.append((left_word + right_word, left_coef * right_coef))
        return AlgebraElement(self.__algebra, dict(_accumulate(product)))

    def __rmul__(self, other) -> 'AlgebraElement':
        return AlgebraElement(self.__algebra, {w: coerce_coefficient(other) * c for w, c in self.__terms.items()})

    def __pow__(self, exponent: int) -> 'AlgebraElement':
        result = AlgebraElement.scalar(self.__algebra, 1)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            if isinstance(other, (GaussianRational, Complex)):
                other = AlgebraElement.scalar(self.__algebra, other)
            else:
                return NotImplemented
        return other.algebra == self.__algebra and (self - other).is_zero()

    def __hash__(self):
        return hash((self.__algebra, frozenset(self.__terms.items())))

    def __repr__(self) -> str:
        if not self.__terms:
            return "0"
        parts = []
        for word in sorted(self.__terms, key=lambda w: (len(w), [self.__algebra.order(g) for g in w])):
            name = "*".join(word) if word else "1"
            parts.append(f"{self.__terms[word]}·{name}")
        return " + ".join(parts)


def _accumulate(pairs: Iterable[Tuple[Word, object]]) -> Dict[Word, object]:
    acc: Dict[Word, object] = {}
    for word, coef in pairs:
        acc[word] = acc.get(word, 0) + coef
    return acc


def commutator(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    if x.algebra != y.algebra:
        raise AlgebraMismatchError(f"Commutator of mixed algebras [left: {x.algebra}, right: {y.algebra}]")
    return x * y - y * x


def star(x: AlgebraElement, star_name: StarName) -> AlgebraElement:
    """Antilinear antihomomorphism: conjugate coefficients, reverse words, map generators"""
    try:
        star_name = StarName(star_name)
    except ValueError:
        raise UnknownStarError(f"Unknown star structure [star: {star_name}]")
    algebra = x.algebra
    images = {g: AlgebraElement.linear_form(algebra, algebra.star_image(star_name, g))
              for g in algebra.generators}
    result = AlgebraElement(algebra)
    for word, coef in x.terms.items():
        term = AlgebraElement.scalar(algebra, coef.conjugate())
        for symbol in reversed(word):
            term = term * images[symbol]
        result = result + term
    return result
