from enum import Enum
from fractions import Fraction
from typing import Union

from duality_lab.algebra.element import AlgebraElement
from duality_lab.algebra.lie_algebra import A, A_DAG, E, F, H, HEISENBERG, SL2, Z
from duality_lab.algebra.morphisms import theta_sqrt_c_from_c
from duality_lab.algebra.tensor import TensorElement, coproduct, tensor
from duality_lab.common.errors import ParameterDomainError
from duality_lab.common.scalars import parse_rational


class NamedElement(str, Enum):
    Casimir = "casimir"
    Xa = "x-a"
    YHeisenberg = "y-heisenberg"
    YSu11 = "y-su11"
    R = "r"
    HSqrtC = "h-sqrt-c"
    ESqrtC = "e-sqrt-c"
    FSqrtC = "f-sqrt-c"


def _sl2(symbol: str) -> AlgebraElement:
    return AlgebraElement.generator(SL2, symbol)


def _heis(symbol: str) -> AlgebraElement:
    return AlgebraElement.generator(HEISENBERG, symbol)


def casimir() -> AlgebraElement:
    h, e, f = _sl2(H), _sl2(E), _sl2(F)
    return h * h * Fraction(1, 2) + e * f + f * e


def x_a(a) -> AlgebraElement:
    """X_a = -aH + E - F"""
    a = a if isinstance(a, float) else parse_rational(a)
    return _sl2(H) * (-a) + _sl2(E) - _sl2(F)


def y_heisenberg() -> TensorElement:
    one = AlgebraElement.scalar(HEISENBERG, 1)
    a, ad = _heis(A), _heis(A_DAG)
    return (tensor(one, a) - tensor(a, one)) * (tensor(ad, one) - tensor(one, ad))


def y_su11() -> TensorElement:
    one = AlgebraElement.scalar(SL2, 1)
    omega = casimir()
    return (tensor(one, omega) + tensor(omega, one) - coproduct(omega)) * Fraction(1, 2)


def r_element() -> TensorElement:
    """Correction term R in theta (x) theta (Y) = Y + R for the Charlier isomorphism"""
    one = AlgebraElement.scalar(HEISENBERG, 1)
    a, ad, z = _heis(A), _heis(A_DAG), _heis(Z)
    return (tensor(one, z * ad) - tensor(z, ad) + tensor(z * ad, one) - tensor(ad, z)
            + tensor(one, a * z) - tensor(z, a) + tensor(a * z, one) - tensor(a, z)
            + tensor(z, z) * 2 - tensor(z * z, one) - tensor(one, z * z))


def named_element(name: NamedElement, **params) -> Union[AlgebraElement, TensorElement]:
    name = NamedElement(name)
    if name == NamedElement.Casimir:
        return casimir()
    if name == NamedElement.Xa:
        if "a" not in params:
            raise ParameterDomainError("X_a needs parameter a")
        return x_a(params["a"])
    if name == NamedElement.YHeisenberg:
        return y_heisenberg()
    if name == NamedElement.YSu11:
        return y_su11()
    if name == NamedElement.R:
        return r_element()
    if "c" not in params:
        raise ParameterDomainError(f"{name.value} needs parameter c")
    c = parse_rational(params["c"])
    if not 0 < c != 1:
        raise ParameterDomainError(f"{name.value} needs 0 < c != 1 [c: {c}]")
    theta = theta_sqrt_c_from_c(c)
    return theta.image({NamedElement.HSqrtC: H, NamedElement.ESqrtC: E, NamedElement.FSqrtC: F}[name])
