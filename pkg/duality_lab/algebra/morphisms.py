import cmath
import math
from enum import Enum
from fractions import Fraction
from typing import Dict, Mapping, Optional, Union

import numpy as np

from duality_lab.algebra.element import AlgebraElement
from duality_lab.algebra.lie_algebra import A, A_DAG, E, F, H, HEISENBERG, SL2, Z, LieAlgebraSpec
from duality_lab.algebra.tensor import TensorElement, tensor
from duality_lab.common.errors import AlgebraMismatchError, ExactModeError, ParameterDomainError
from duality_lab.common.scalars import I_UNIT, ArithmeticMode, GaussianRational, exact_sqrt, parse_rational


class MorphismName(str, Enum):
    Identity = "identity"
    ThetaCharlier = "theta-charlier"
    ThetaExp = "theta-exp"
    ThetaSqrtC = "theta-sqrt-c"
    ThetaParabolic = "theta-parabolic"
    ThetaParabolicInverse = "theta-parabolic-inverse"
    ThetaPhi = "theta-phi"
    Antipode = "antipode"
    Transpose = "transpose"
    Composite = "composite"
    Inverse = "inverse"


class MorphismKind(str, Enum):
    Homomorphism = "homomorphism"
    AntiHomomorphism = "anti-homomorphism"


class AlgebraMorphism:
    """
    Linear map of a Lie algebra given on generators, extended multiplicatively
    (or anti-multiplicatively) to the enveloping algebra
    """

    def __init__(self,
                 name: MorphismName,
                 algebra: LieAlgebraSpec,
                 images: Mapping[str, AlgebraElement],
                 kind: MorphismKind = MorphismKind.Homomorphism,
                 params: Optional[Dict[str, object]] = None):
        missing = [g for g in algebra.generators if g not in images]
        if missing:
            raise AlgebraMismatchError(f"Morphism images missing for generators [generators: {missing}]")
        self.__name = name
        self.__algebra = algebra
        self.__images = dict(images)
        self.__kind = kind
        self.__params = dict(params or {})

    @property
    def name(self) -> MorphismName:
        return self.__name

    @property
    def algebra(self) -> LieAlgebraSpec:
        return self.__algebra

    @property
    def kind(self) -> MorphismKind:
        return self.__kind

    @property
    def params(self) -> Dict[str, object]:
        return dict(self.__params)

    @property
    def images(self) -> Dict[str, AlgebraElement]:
        return dict(self.__images)

    def image(self, generator: str) -> AlgebraElement:
        return self.__images[generator]

    def is_float_only(self) -> bool:
        return not all(img.is_exact() for img in self.__images.values())

    def label(self) -> str:
        if not self.__params:
            return self.__name.value
        args = ",".join(f"{k}={v}" for k, v in self.__params.items())
        return f"{self.__name.value}({args})"

    def inverse(self) -> 'AlgebraMorphism':
        return _INVERSES.get(self.__name, _numeric_inverse)(self)

    def __repr__(self) -> str:
        return f"AlgebraMorphism({self.label()})"


def apply_morphism(m: AlgebraMorphism,
                   x: Union[AlgebraElement, TensorElement],
                   mode: ArithmeticMode = None) -> Union[AlgebraElement, TensorElement]:
    if x.algebra != m.algebra:
        raise AlgebraMismatchError(f"Morphism and element over different algebras [morphism: {m.algebra}, element: {x.algebra}]")
    if mode == ArithmeticMode.Exact and m.is_float_only():
        raise ExactModeError(f"Float only morphism requested in exact mode [morphism: {m.label()}]")
    if isinstance(x, TensorElement):
        result = TensorElement(x.algebra, x.factor_count)
        for key, coef in x.terms.items():
            factors = [_apply_word(m, word) for word in key]
            result = result + tensor(*factors) * coef
        return result
    result = AlgebraElement(x.algebra)
    for word, coef in x.terms.items():
        result = result + _apply_word(m, word) * coef
    return result


def _apply_word(m: AlgebraMorphism, word) -> AlgebraElement:
    term = AlgebraElement.scalar(m.algebra, 1)
    symbols = reversed(word) if m.kind == MorphismKind.AntiHomomorphism else word
    for symbol in symbols:
        term = term * m.image(symbol)
    return term


def compose(outer: AlgebraMorphism, inner: AlgebraMorphism) -> AlgebraMorphism:
    """outer after inner, images outer(inner(g))"""
    if outer.algebra != inner.algebra:
        raise AlgebraMismatchError("Cannot compose morphisms of different algebras")
    flips = (outer.kind == MorphismKind.AntiHomomorphism) != (inner.kind == MorphismKind.AntiHomomorphism)
    kind = MorphismKind.AntiHomomorphism if flips else MorphismKind.Homomorphism
    images = {g: apply_morphism(outer, inner.image(g)) for g in inner.algebra.generators}
    return AlgebraMorphism(MorphismName.Composite, inner.algebra, images, kind,
                           {"outer": outer.label(), "inner": inner.label()})


def _gen(algebra: LieAlgebraSpec, symbol: str) -> AlgebraElement:
    return AlgebraElement.generator(algebra, symbol)


def identity_morphism(algebra: LieAlgebraSpec) -> AlgebraMorphism:
    return AlgebraMorphism(MorphismName.Identity, algebra, {g: _gen(algebra, g) for g in algebra.generators})


def antipode(algebra: LieAlgebraSpec) -> AlgebraMorphism:
    """X -> -X on generators, an anti-homomorphism of the enveloping algebra"""
    return AlgebraMorphism(MorphismName.Antipode, algebra, {g: -_gen(algebra, g) for g in algebra.generators},
                           MorphismKind.AntiHomomorphism)


def transpose_sl2() -> AlgebraMorphism:
    """H -> H, E <-> F, an anti-homomorphism"""
    return AlgebraMorphism(MorphismName.Transpose, SL2, {H: _gen(SL2, H), E: _gen(SL2, F), F: _gen(SL2, E)},
                           MorphismKind.AntiHomomorphism)


def theta_charlier() -> AlgebraMorphism:
    a, ad, z = (_gen(HEISENBERG, g) for g in (A, A_DAG, Z))
    return AlgebraMorphism(MorphismName.ThetaCharlier, HEISENBERG, {A: z - a, A_DAG: z - ad, Z: z})


def theta_exp(scale=Fraction(1, 2)) -> AlgebraMorphism:
    """
    a -> (a - a_dag)/2, a_dag -> i s (a + a_dag), Z -> i s Z
    s = 1/2 matches the exponential kernel with cross term -ixy/(2c), s = 1 is the printed variant
    """
    s = _scalar(scale)
    a, ad, z = (_gen(HEISENBERG, g) for g in (A, A_DAG, Z))
    i_s = I_UNIT * s if isinstance(s, Fraction) else 1j * s
    return AlgebraMorphism(MorphismName.ThetaExp, HEISENBERG,
                           {A: (a - ad) * Fraction(1, 2), A_DAG: (a + ad) * i_s, Z: z * i_s},
                           params={"s": scale})


def _theta_exp_inverse(m: AlgebraMorphism) -> AlgebraMorphism:
    s = _scalar(m.params["s"])
    a, ad, z = (_gen(HEISENBERG, g) for g in (A, A_DAG, Z))
    inv_i_s = (I_UNIT * s) ** -1 if isinstance(s, Fraction) else 1 / (1j * s)
    half_inv = inv_i_s * Fraction(1, 2)
    return AlgebraMorphism(MorphismName.Inverse, HEISENBERG,
                           {A: a + ad * half_inv, A_DAG: -a + ad * half_inv, Z: z * inv_i_s},
                           params={"of": m.label()})


def theta_sqrt_c(root) -> AlgebraMorphism:
    """theta_{sqrt c} from a signed square root r of c, r = -sqrt(c) gives the inverse"""
    r = _scalar(root)
    c = r * r
    if c == 1 or c <= 0:
        raise ParameterDomainError(f"theta_sqrt_c needs 0 < c != 1 [root: {root}]")
    h, e, f = (_gen(SL2, g) for g in (H, E, F))
    denom = 1 / (1 - c) if isinstance(c, Fraction) else 1.0 / (1.0 - c)
    images = {
        H: (h * (1 + c) - e * (2 * r) + f * (2 * r)) * denom,
        E: (h * (-r) + e - f * c) * denom,
        F: (h * r - e * c + f) * denom,
    }
    return AlgebraMorphism(MorphismName.ThetaSqrtC, SL2, images, params={"root": root})


def theta_sqrt_c_from_c(c, sign: int = 1) -> AlgebraMorphism:
    c = parse_rational(c)
    root = exact_sqrt(c)
    if root is None:
        return theta_sqrt_c(sign * math.sqrt(c))
    return theta_sqrt_c(sign * root)


def theta_parabolic() -> AlgebraMorphism:
    h, e, f = (_gen(SL2, g) for g in (H, E, F))
    half_i = I_UNIT * Fraction(1, 2)
    return AlgebraMorphism(MorphismName.ThetaParabolic, SL2,
                           {H: e + f, E: (-h + e - f) * half_i, F: (h + e - f) * half_i})


def theta_parabolic_inverse() -> AlgebraMorphism:
    h, e, f = (_gen(SL2, g) for g in (H, E, F))
    half = Fraction(1, 2)
    return AlgebraMorphism(MorphismName.ThetaParabolicInverse, SL2,
                           {H: (e - f) * I_UNIT, E: (h - (e + f) * I_UNIT) * half, F: (h + (e + f) * I_UNIT) * half})


def theta_phi(phi: float) -> AlgebraMorphism:
    """
    Hyperbolic isomorphism used for the Meixner-Pollaczek kernel, float only
    E and F images are arranged so that brackets are preserved
    """
    phi = float(phi)
    if not 0 < phi < math.pi:
        raise ParameterDomainError(f"theta_phi needs 0 < phi < pi [phi: {phi}]")
    h, e, f = (_gen(SL2, g) for g in (H, E, F))
    s = math.sin(phi)
    ep = cmath.exp(1j * phi)
    em = cmath.exp(-1j * phi)
    k = 1 / (2j * s)
    images = {
        H: (h * (-math.cos(phi)) + e - f) * (1j / s),
        E: (-h + e * ep - f * em) * k,
        F: (-h + e * em - f * ep) * (-k),
    }
    return AlgebraMorphism(MorphismName.ThetaPhi, SL2, images, params={"phi": phi})


def theta_phi_printed(phi: float) -> AlgebraMorphism:
    """Generator assignment exactly as printed, which fails bracket preservation"""
    phi = float(phi)
    h, e, f = (_gen(SL2, g) for g in (H, E, F))
    s = math.sin(phi)
    k = 1 / (2j * s)
    images = {
        H: (h * (-math.cos(phi)) + e - f) * (1j / s),
        E: (-h + e * cmath.exp(-1j * phi) - f * cmath.exp(1j * phi)) * k,
        F: (-h + e * cmath.exp(1j * phi) - f * cmath.exp(-1j * phi)) * k,
    }
    return AlgebraMorphism(MorphismName.ThetaPhi, SL2, images, params={"phi": phi, "variant": "printed"})


def _numeric_inverse(m: AlgebraMorphism) -> AlgebraMorphism:
    """Inverts the generator-level matrix of a linear morphism"""
    gens = m.algebra.generators
    for g in gens:
        for word in m.image(g).terms:
            if len(word) != 1:
                raise ParameterDomainError(f"Morphism is not linear on generators [morphism: {m.label()}]")
    matrix = np.array([[complex(m.image(g).coefficient((t,))) for g in gens] for t in gens])
    inverse = np.linalg.inv(matrix)
    images = {g: AlgebraElement.linear_form(m.algebra, {t: complex(inverse[row, col]) for row, t in enumerate(gens)})
              for col, g in enumerate(gens)}
    return AlgebraMorphism(MorphismName.Inverse, m.algebra, images, m.kind, {"of": m.label()})


def _scalar(value):
    if isinstance(value, (Fraction, int)):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, GaussianRational):
        raise ParameterDomainError(f"Morphism parameter must be real [value: {value}]")
    return float(value)


_INVERSES = {
    MorphismName.Identity: lambda m: m,
    MorphismName.ThetaCharlier: lambda m: theta_charlier(),
    MorphismName.ThetaExp: _theta_exp_inverse,
    MorphismName.ThetaSqrtC: lambda m: theta_sqrt_c(-_scalar(m.params["root"])),
    MorphismName.ThetaParabolic: lambda m: theta_parabolic_inverse(),
    MorphismName.ThetaParabolicInverse: lambda m: theta_parabolic(),
    MorphismName.Antipode: lambda m: m,
    MorphismName.Transpose: lambda m: m,
}
