from fractions import Fraction

import sympy

from duality_lab.common.scalars import to_sympy
from duality_lab.processes.generator import MarkovGenerator, Provenance
from duality_lab.processes.process_spec import GeneratorVariant, ProcessFamily, ProcessSpec
from duality_lab.representations.carriers import site_symbols


class HypGenerator(MarkovGenerator):
    """
    [L f](x) = sum_{i<j} -(k_i - ix_i)(k_j + ix_j)(f(x + ie_i - ie_j) - f(x))
                         -(k_i + ix_i)(k_j - ix_j)(f(x - ie_i + ie_j) - f(x))
    Functions are e^{phi sum x} p(x); the opposite shifts cancel the phases, so L acts on p directly
    The printed variant has the factor +2 in place of -1
    """

    def __init__(self, spec: ProcessSpec):
        super().__init__(spec)
        self.__k = [to_sympy(k) for k in spec.k_values()]
        self.__factor = to_sympy(Fraction(2) if spec.variant == GeneratorVariant.Printed else Fraction(-1))

    @staticmethod
    def create_generator(spec: ProcessSpec) -> 'HypGenerator':
        return HypGenerator(spec)

    @staticmethod
    def process_family() -> ProcessFamily:
        return ProcessFamily.HYP

    @staticmethod
    def provenance() -> Provenance:
        return Provenance.DirectFormula

    def apply(self, f: sympy.Expr) -> sympy.Expr:
        symbols = site_symbols(self.sites)
        i_unit = sympy.I
        f = to_sympy(f)
        total = sympy.Integer(0)
        for i, j in self.pairs():
            xi, xj = symbols[i], symbols[j]
            ki, kj = self.__k[i], self.__k[j]
            forward = f.subs({xi: xi + i_unit, xj: xj - i_unit}, simultaneous=True)
            backward = f.subs({xi: xi - i_unit, xj: xj + i_unit}, simultaneous=True)
            total += self.__factor * ((ki - i_unit * xi) * (kj + i_unit * xj) * (forward - f)
                                      + (ki + i_unit * xi) * (kj - i_unit * xj) * (backward - f))
        return sympy.expand(total)
