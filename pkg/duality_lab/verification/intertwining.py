from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
import sympy

from duality_lab.algebra.element import AlgebraElement
from duality_lab.algebra.named_elements import x_a
from duality_lab.common.errors import CarrierMismatchError
from duality_lab.common.logger import Logger
from duality_lab.common.scalars import ArithmeticMode, exact_sqrt, parse_rational, to_sympy
from duality_lab.kernels.duality_kernel import DualityKernel, JetKernel, RowKernel, SlotKind
from duality_lab.kernels.laguerre import LaguerreKernel
from duality_lab.kernels.meixner import MeixnerKernel
from duality_lab.representations.carriers import site_symbol
from duality_lab.representations.representation import FunctionRepresentation, Representation, \
    SequenceRepresentation
from duality_lab.representations.su11 import PiK
from duality_lab.verification.duality_residual import FLOAT_TOLERANCE, row_function
from duality_lab.verification_report import ResidualAccumulator, Stopwatch, VerificationReport

logger = Logger("intertwining")

ElementMap = Callable[[AlgebraElement], AlgebraElement]


def _is_float(left: Representation, right: Representation, kernel: DualityKernel) -> bool:
    if isinstance(kernel, JetKernel):
        return True
    return left.mode == ArithmeticMode.Float or right.mode == ArithmeticMode.Float


def _discrete_residual(left: SequenceRepresentation, right: SequenceRepresentation, kernel: DualityKernel,
                       x: AlgebraElement, y: AlgebraElement, grid: int) -> ResidualAccumulator:
    acc = ResidualAccumulator()
    for n in range(grid + 1):
        for m in range(grid + 1):
            lhs = left.act_at(x, lambda a: kernel.bare(a, m), n)
            rhs = right.act_at(y, lambda b: kernel.bare(n, b), m)
            acc.add(lhs, rhs)
    return acc


def _row_residual(left: SequenceRepresentation, right: FunctionRepresentation, kernel: RowKernel,
                  x: AlgebraElement, y: AlgebraElement, grid: int) -> ResidualAccumulator:
    symbol = site_symbol(0)
    row = row_function(kernel)
    acc = ResidualAccumulator()
    for n in range(grid + 1):
        lhs = sympy.expand(to_sympy(left.act_at(x, lambda a: row(a, symbol), n)))
        rhs = right.apply_element(y, row(n, symbol))
        acc.add(lhs, sympy.expand(rhs))
    return acc


def _jet_residual(left: FunctionRepresentation, right: FunctionRepresentation, kernel: JetKernel,
                  x: AlgebraElement, y: AlgebraElement,
                  points: Sequence[Tuple[float, float]]) -> ResidualAccumulator:
    acc = ResidualAccumulator()
    for a, b in points:
        first, second = kernel.jet(a, b, 0), kernel.jet(a, b, 1)
        lhs = left.act_at_jet(x, a, first)
        rhs = right.act_at_jet(y, b, second)
        size = max(abs(v) for v in first + second)
        acc.add_residual(abs(lhs - rhs), max(abs(lhs), abs(rhs), size))
    return acc


def jet_points(interval: Tuple[float, float], count: int) -> List[Tuple[float, float]]:
    axis = np.linspace(interval[0], interval[1], count)
    return [(float(a), float(b)) for a in axis for b in axis]


def intertwining_residual(left: Representation,
                          right: Representation,
                          kernel: DualityKernel,
                          alpha: ElementMap,
                          beta: ElementMap,
                          grid: int = 8,
                          interval: Tuple[float, float] = (0.1, 10.0),
                          generators: Optional[Sequence[str]] = None,
                          name: str = "",
                          notes: Optional[List[str]] = None) -> VerificationReport:
    """
    [left(alpha(G)) K(., b)](a) - [right(beta(G)) K(a, .)](b) per generator G
    Discrete slots sweep a, b <= grid; jet kernels use grid x grid points on interval
    """
    generators = list(generators or left.algebra.generators)
    notes = list(notes or [])
    points = jet_points(interval, grid) if isinstance(kernel, JetKernel) else []
    acc = ResidualAccumulator()
    with Stopwatch() as watch:
        for g in generators:
            element = AlgebraElement.generator(left.algebra, g)
            x, y = alpha(element), beta(element)
            if isinstance(kernel, JetKernel):
                if not isinstance(left, FunctionRepresentation) or not isinstance(right, FunctionRepresentation):
                    raise CarrierMismatchError(f"Jet kernels need differential representations [kernel: {kernel.label()}]")
                partial = _jet_residual(left, right, kernel, x, y, points)
            elif kernel.slots() == (SlotKind.Discrete, SlotKind.Discrete):
                if not isinstance(left, SequenceRepresentation) or not isinstance(right, SequenceRepresentation):
                    raise CarrierMismatchError(f"Discrete kernels need sequence representations [kernel: {kernel.label()}]")
                partial = _discrete_residual(left, right, kernel, x, y, grid)
            else:
                if not isinstance(left, SequenceRepresentation) or not isinstance(right, FunctionRepresentation):
                    raise CarrierMismatchError(f"Row kernels pair a sequence and a function representation "
                                               f"[kernel: {kernel.label()}]")
                partial = _row_residual(left, right, kernel, x, y, grid)
            notes.append(f"{g}: {partial.max_abs}")
            acc.merge(partial)
    floating = _is_float(left, right, kernel)
    mode = ArithmeticMode.Float if floating else ArithmeticMode.Exact
    tolerance = FLOAT_TOLERANCE if floating else 0.0
    case = f"intertwining:{name or kernel.label()}"
    report = acc.report(case, mode, tolerance, relative=floating, notes=notes).with_timing(watch.elapsed_ms)
    logger.debug(f"Intertwining residual [case: {case}, residual: {report.max_abs_residual}]")
    return report


def meixner_eigen_residual(k, c, grid: int = 8) -> VerificationReport:
    """pi_{k,c}(X_a) M(., x)(n) = ((c - 1)/sqrt(c)) (x + k) M(n, x) with a = (1 + c)/(2 sqrt(c))"""
    k, c = parse_rational(k), parse_rational(c)
    root = exact_sqrt(c)
    rep = PiK(k, c)
    kernel = MeixnerKernel(k, c)
    if root is None:
        root = float(c) ** 0.5
        a = (1 + float(c)) / (2 * root)
    else:
        a = (1 + c) / (2 * root)
    element = x_a(a)
    eigen = (c - 1) / root
    acc = ResidualAccumulator()
    with Stopwatch() as watch:
        for n in range(grid + 1):
            for x in range(grid + 1):
                lhs = rep.act_at(element, lambda m: kernel.bare(m, x), n)
                # bound on the summed three-term action
                nearby = max(abs(complex(kernel.bare(m, x))) for m in range(max(n - 1, 0), n + 2))
                scale = (abs(a) + abs(eigen) + 1) * (n + x + 2 * float(k) + 2) * nearby
                acc.add(lhs, eigen * (x + k) * kernel.bare(n, x), scale)
    floating = rep.mode == ArithmeticMode.Float
    mode = ArithmeticMode.Float if floating else ArithmeticMode.Exact
    return acc.report(f"eigen:meixner(k={k},c={c})", mode, FLOAT_TOLERANCE if floating else 0.0,
                      relative=floating).with_timing(watch.elapsed_ms)


def laguerre_eigen_residual(k, grid: int = 8) -> VerificationReport:
    """pi_k(X_1) L(., x)(n) = -x L(n, x)"""
    k = parse_rational(k)
    rep = PiK(k)
    kernel = LaguerreKernel(k)
    symbol = site_symbol(0)
    element = x_a(1)
    acc = ResidualAccumulator()
    with Stopwatch() as watch:
        for n in range(grid + 1):
            lhs = sympy.expand(to_sympy(rep.act_at(element, lambda m: kernel.row(m, symbol), n)))
            acc.add(lhs, sympy.expand(-symbol * kernel.row(n, symbol)))
    return acc.report(f"eigen:laguerre(k={k})", ArithmeticMode.Exact, 0.0).with_timing(watch.elapsed_ms)


__all__ = ["intertwining_residual", "meixner_eigen_residual", "laguerre_eigen_residual", "jet_points"]
