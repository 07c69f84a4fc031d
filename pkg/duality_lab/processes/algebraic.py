from fractions import Fraction
from typing import List

from duality_lab.algebra.named_elements import y_heisenberg, y_su11
from duality_lab.algebra.tensor import TensorElement, embed_pair
from duality_lab.common.errors import UnknownTypeError
from duality_lab.common.logger import Logger
from duality_lab.processes.generator import MarkovGenerator, Provenance
from duality_lab.processes.process_spec import GeneratorVariant, ProcessFamily, ProcessSpec
from duality_lab.representations.heisenberg import RhoC, SigmaC
from duality_lab.representations.representation import Representation, apply_tensor
from duality_lab.representations.su11 import PiK, RhoK, SigmaK

logger = Logger("algebraic_generator")


def site_representations(spec: ProcessSpec) -> List[Representation]:
    """One representation per site, on the carrier the family's direct formula acts on"""
    family = spec.family
    if family == ProcessFamily.IRW:
        return [RhoC(spec.c, spec.trunc) for _ in range(spec.sites)]
    if family == ProcessFamily.DIF:
        return [SigmaC(spec.c, spec.max_degree) for _ in range(spec.sites)]
    if family == ProcessFamily.SIP:
        return [PiK(k, Fraction(1), spec.trunc) for k in spec.k_values()]
    if family == ProcessFamily.SEP:
        return [PiK(k, Fraction(1), j, closed=True) for k, j in zip(spec.k_values(), spec.j)]
    if family == ProcessFamily.BEP:
        return [SigmaK(k, spec.max_degree) for k in spec.k_values()]
    if family == ProcessFamily.HYP:
        return [RhoK(k, spec.phi, spec.max_degree) for k in spec.k_values()]
    raise UnknownTypeError(f"No representations for process family [family: {family}]")


class AlgebraicGenerator(MarkovGenerator):
    """
    L = scale * sum_{i<j} (rho_i (x) rho_j)(Y_ij) + shift
    IRW, DIF: scale 1/c on the Heisenberg Y; SIP, BEP, HYP: su(1,1) Y plus 2 k_i k_j per pair;
    SEP: the inclusion form at k = -j/2 with the overall sign flipped
    The printed HYP variant shifts by k_i k_j instead
    """

    def __init__(self, spec: ProcessSpec):
        super().__init__(spec)
        self.__reps = site_representations(spec)
        self.__element = self.__pair_sum(spec)
        self.__scale, self.__shift = self.__constants(spec)
        logger.trace(f"Algebraic generator built [spec: {spec.label()}, scale: {self.__scale}, shift: {self.__shift}]")

    @staticmethod
    def create_generator(spec: ProcessSpec) -> 'AlgebraicGenerator':
        return AlgebraicGenerator(spec)

    @staticmethod
    def provenance() -> Provenance:
        return Provenance.Algebraic

    @property
    def representations(self) -> List[Representation]:
        return list(self.__reps)

    @property
    def element(self) -> TensorElement:
        return self.__element

    def __pair_sum(self, spec: ProcessSpec) -> TensorElement:
        y = y_heisenberg() if spec.family in (ProcessFamily.IRW, ProcessFamily.DIF) else y_su11()
        total = None
        for i, j in self.pairs():
            term = embed_pair(y, i + 1, j + 1, spec.sites)
            total = term if total is None else total + term
        return total

    def __constants(self, spec: ProcessSpec):
        if spec.family in (ProcessFamily.IRW, ProcessFamily.DIF):
            return 1 / spec.c, Fraction(0)
        k = spec.k_values()
        per_pair = Fraction(1) if spec.family == ProcessFamily.HYP and spec.variant == GeneratorVariant.Printed \
            else Fraction(2)
        shift = sum((per_pair * k[i] * k[j] for i, j in self.pairs()), Fraction(0))
        if spec.family == ProcessFamily.SEP:
            return Fraction(-1), -shift
        return Fraction(1), shift

    def apply(self, f):
        image = apply_tensor(self.__reps, self.__element, f)
        return self.__reps[0].carrier.combine([(self.__scale, image), (self.__shift, f)])
