import math
from functools import lru_cache
from fractions import Fraction
from itertools import product
from typing import List, Optional, Sequence, Tuple

import numpy as np
import sympy

from duality_lab.common.concurrency import parallel_map
from duality_lab.common.errors import CarrierMismatchError
from duality_lab.common.logger import Logger
from duality_lab.common.scalars import ArithmeticMode, to_sympy
from duality_lab.kernels.duality_kernel import DualityKernel, JetKernel, RowKernel, SlotKind
from duality_lab.kernels.laguerre import LaguerreKernel
from duality_lab.kernels.meixner_pollaczek import MeixnerPollaczekKernel
from duality_lab.processes.diffusion import DiffusionGenerator
from duality_lab.processes.generator import MarkovGenerator
from duality_lab.processes.jump import JumpGenerator
from duality_lab.processes.process_spec import ProcessSpec
from duality_lab.representations.carriers import site_symbols
from duality_lab.verification.duality_case import DualityCase, EvaluationPlan
from duality_lab.verification_report import CheckKind, ResidualAccumulator, Stopwatch, VerificationReport

logger = Logger("duality_residual")

FLOAT_TOLERANCE = 1e-9
NEGATIVE_CONTROL_THRESHOLD = 1e-3
GRID_SEED = 20240601
DEFAULT_INTERVAL = (0.1, 10.0)


def discrete_states(spec: ProcessSpec, grid: int) -> List[tuple]:
    """Product states with every occupancy at most grid, and inside the caps of a closed process"""
    ranges = [range(min(grid, cap) + 1) for cap in spec.caps()]
    return list(product(*ranges))


def float_points(case: DualityCase) -> List[Tuple[Tuple[float, ...], Tuple[float, ...]]]:
    """(x, y) pairs drawn with a fixed seed from grid equally spaced values per variable"""
    lo, hi = case.interval or DEFAULT_INTERVAL
    axis = np.linspace(lo, hi, case.grid)
    rng = np.random.default_rng(GRID_SEED)
    sites = case.sites
    picks = rng.choice(axis, size=(case.grid * case.grid, 2 * sites))
    return [(tuple(float(v) for v in row[:sites]), tuple(float(v) for v in row[sites:])) for row in picks]


def row_function(kernel: RowKernel):
    """Kernel rows, Laguerre rows carry c^{-n/2} whenever it is rational"""
    if isinstance(kernel, LaguerreKernel) and kernel.scale(1) is not None:
        return kernel.scaled_row
    return kernel.row


def _check_plan(case: DualityCase, kernels: Sequence[DualityKernel],
                left: MarkovGenerator, right: MarkovGenerator) -> None:
    kernel = kernels[0]
    slots = kernel.slots()
    plan = case.plan
    if plan == EvaluationPlan.ExactDiscrete:
        valid = slots == (SlotKind.Discrete, SlotKind.Discrete) and isinstance(left, JumpGenerator) \
            and isinstance(right, JumpGenerator)
    elif plan == EvaluationPlan.ExactPolynomial:
        valid = isinstance(kernel, RowKernel) and not isinstance(kernel, MeixnerPollaczekKernel) \
            and isinstance(left, JumpGenerator) and isinstance(right, DiffusionGenerator)
    elif isinstance(kernel, JetKernel):
        valid = isinstance(left, DiffusionGenerator) and isinstance(right, DiffusionGenerator)
    else:
        valid = isinstance(kernel, MeixnerPollaczekKernel) and isinstance(left, JumpGenerator)
    if not valid:
        raise CarrierMismatchError(f"Evaluation plan does not fit the kernel and generators [plan: {plan.value}, "
                                   f"kernel: {kernel.kernel_family().value}, left: {left.label()}, "
                                   f"right: {right.label()}]")


def _discrete_residuals(case: DualityCase, kernels, left: JumpGenerator, right: JumpGenerator,
                        workers: Optional[int]) -> ResidualAccumulator:
    scale = case.kernel_scale

    @lru_cache(maxsize=None)
    def kernel_value(a: tuple, b: tuple) -> Fraction:
        return scale * math.prod((k.bare(ai, bi) for k, ai, bi in zip(kernels, a, b)), start=Fraction(1))

    right_states = discrete_states(case.right, case.grid)

    def row_residual(x: tuple) -> ResidualAccumulator:
        acc = ResidualAccumulator()
        for y in right_states:
            lhs = left.apply_at(lambda s: kernel_value(s, y), x)
            rhs = right.apply_at(lambda s: kernel_value(x, s), y)
            acc.add(lhs, rhs)
        return acc

    return _merge(parallel_map(row_residual, discrete_states(case.left, case.grid), workers))


def _polynomial_residuals(case: DualityCase, kernels, left: JumpGenerator, right: MarkovGenerator,
                          workers: Optional[int]) -> ResidualAccumulator:
    symbols = site_symbols(case.sites)
    rows = [row_function(k) for k in kernels]
    scale = to_sympy(case.kernel_scale)

    @lru_cache(maxsize=None)
    def kernel_row(n: tuple) -> sympy.Expr:
        return sympy.expand(scale * sympy.Mul(*[row(m, s) for row, m, s in zip(rows, n, symbols)]))

    def residual(n: tuple) -> ResidualAccumulator:
        acc = ResidualAccumulator()
        lhs = sympy.expand(to_sympy(left.apply_at(kernel_row, n)))
        acc.add(lhs, right.apply(kernel_row(n)))
        return acc

    return _merge(parallel_map(residual, discrete_states(case.left, case.grid), workers))


def product_jet(jets: Sequence[Tuple[complex, complex, complex]]):
    """Value, gradient and hessian of prod_j f_j(z_j) from the one variable jets"""
    values = [j[0] for j in jets]
    count = len(jets)

    def others(*skip: int) -> complex:
        return math.prod((values[m] for m in range(count) if m not in skip), start=1)

    gradient = [jets[i][1] * others(i) for i in range(count)]
    hessian = [[jets[i][2] * others(i) if i == j else jets[i][1] * jets[j][1] * others(i, j)
                for j in range(count)] for i in range(count)]
    return others(), gradient, hessian


def _jet_scale(generator: DiffusionGenerator, point, gradient, hessian) -> float:
    """Sum of the absolute generator terms, the size rounding errors are measured against"""
    total = 0.0
    for i, j in generator.pairs():
        a, b = generator.pair_coefficients(i, j, point)
        total += abs(float(a)) * (abs(hessian[i][i]) + 2 * abs(hessian[i][j]) + abs(hessian[j][j]))
        total += abs(float(b)) * (abs(gradient[i]) + abs(gradient[j]))
    return total


def _jet_residuals(case: DualityCase, kernels, left: DiffusionGenerator, right: DiffusionGenerator,
                   workers: Optional[int]) -> ResidualAccumulator:
    scale = float(case.kernel_scale)

    def residual(point) -> ResidualAccumulator:
        x, y = point
        _, grad_x, hess_x = product_jet([k.jet(a, b, 0) for k, a, b in zip(kernels, x, y)])
        _, grad_y, hess_y = product_jet([k.jet(a, b, 1) for k, a, b in zip(kernels, x, y)])
        lhs = scale * left.apply_jet(x, grad_x, hess_x)
        rhs = scale * right.apply_jet(y, grad_y, hess_y)
        size = abs(scale) * max(_jet_scale(left, x, grad_x, hess_x), _jet_scale(right, y, grad_y, hess_y))
        acc = ResidualAccumulator()
        acc.add_residual(abs(lhs - rhs), max(abs(lhs), abs(rhs), size))
        return acc

    return _merge(parallel_map(residual, float_points(case), workers))


def _merge(partials: List[ResidualAccumulator]) -> ResidualAccumulator:
    acc = ResidualAccumulator()
    for partial in partials:
        acc.merge(partial)
    return acc


def duality_residual(case: DualityCase, workers: Optional[int] = None) -> VerificationReport:
    """
    max over the grid of |[L_left D(., y)](x) - [L_right D(x, .)](y)|
    The left generator acts on the first kernel slot, the right one on the second
    """
    kernels = case.kernels()
    left, right = case.left_generator(), case.right_generator()
    _check_plan(case, kernels, left, right)
    logger.debug(f"Duality residual started [case: {case.label()}, plan: {case.plan.value}]")
    with Stopwatch() as watch:
        if case.plan == EvaluationPlan.ExactDiscrete:
            acc = _discrete_residuals(case, kernels, left, right, workers)
        elif case.plan == EvaluationPlan.ExactPolynomial or not isinstance(kernels[0], JetKernel):
            acc = _polynomial_residuals(case, kernels, left, right, workers)
        else:
            acc = _jet_residuals(case, kernels, left, right, workers)
    exact = case.plan != EvaluationPlan.FloatAnalytic
    mode = ArithmeticMode.Exact if exact else ArithmeticMode.Float
    if case.kind == CheckKind.NegativeControl:
        tolerance = NEGATIVE_CONTROL_THRESHOLD
    else:
        tolerance = 0.0 if exact else FLOAT_TOLERANCE
    report = acc.report(case.label(), mode, tolerance, relative=not exact, kind=case.kind, notes=case.notes)
    report = report.with_timing(watch.elapsed_ms)
    logger.debug(f"Duality residual [case: {report.case}, residual: {report.max_abs_residual}, "
                 f"relative: {report.max_rel_residual}, points: {report.points_checked}]")
    return report
