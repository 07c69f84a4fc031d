from abc import ABC, abstractmethod
from enum import Enum
from itertools import product
from typing import List

import sympy

from duality_lab.processes.process_spec import ProcessFamily, ProcessSpec
from duality_lab.representations.carriers import CarrierKind, delta, site_symbols

# Y moves one unit per factor and its words have length two
GENERATOR_MARGIN = 2
BASIS_DEGREE_CAP = 4
HYP_BASIS_DEGREE_CAP = 3


class Provenance(str, Enum):
    DirectFormula = "direct"
    Algebraic = "algebraic"


def carrier_kind(spec: ProcessSpec) -> CarrierKind:
    if spec.is_discrete():
        return CarrierKind.TruncatedSequence
    if spec.family == ProcessFamily.HYP:
        return CarrierKind.ExpPolynomial
    return CarrierKind.Polynomial


def interior_states(spec: ProcessSpec, margin: int = GENERATOR_MARGIN) -> List[tuple]:
    """Product states a generator can act on without leaving the truncation"""
    ranges = []
    for cap in spec.caps():
        top = cap if spec.family == ProcessFamily.SEP else cap - margin
        ranges.append(range(0, max(top, -1) + 1))
    return list(product(*ranges))


def product_basis(spec: ProcessSpec, margin: int = GENERATOR_MARGIN, degree_cap: int = None) -> list:
    """Delta functions on interior states, or monomials of bounded per-site degree"""
    if spec.is_discrete():
        return [delta(*state) for state in interior_states(spec, margin)]
    if degree_cap is None:
        degree_cap = HYP_BASIS_DEGREE_CAP if spec.family == ProcessFamily.HYP else BASIS_DEGREE_CAP
    top = min(spec.max_degree - margin, degree_cap)
    symbols = site_symbols(spec.sites)
    basis = []
    for degrees in product(range(top + 1), repeat=spec.sites):
        basis.append(sympy.Mul(*[s ** d for s, d in zip(symbols, degrees)]))
    return basis


class MarkovGenerator(ABC):
    """Pair-sum generator L = sum_{i<j} L_ij of a process on N sites"""

    def __init__(self, spec: ProcessSpec):
        self.__spec = spec

    @property
    def spec(self) -> ProcessSpec:
        return self.__spec

    @property
    def sites(self) -> int:
        return self.__spec.sites

    @staticmethod
    @abstractmethod
    def provenance() -> Provenance:
        pass

    @abstractmethod
    def apply(self, f):
        """L f for a carrier function (sparse state map, polynomial, or polynomial part)"""
        pass

    def carrier_kind(self) -> CarrierKind:
        return carrier_kind(self.__spec)

    def pairs(self):
        return [(i, j) for i in range(self.sites) for j in range(i + 1, self.sites)]

    def label(self) -> str:
        return f"{self.provenance().value}:{self.__spec.label()}"
