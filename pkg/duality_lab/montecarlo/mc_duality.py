import math
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, Field

from duality_lab.common.concurrency import parallel_map
from duality_lab.common.errors import FactorMismatchError, ParameterDomainError
from duality_lab.common.logger import Logger
from duality_lab.common.scalars import ArithmeticMode
from duality_lab.kernels.duality_kernel import DualityKernel, JetKernel
from duality_lab.montecarlo.ctmc import CtmcSimulator
from duality_lab.montecarlo.sde import DEFAULT_DT, SdeSimulator
from duality_lab.montecarlo.streams import BATCH_SIZE, DEFAULT_SEED, Side, batch_sizes, stream
from duality_lab.processes.process_spec import ProcessSpec
from duality_lab.verification.duality_case import DualityCase
from duality_lab.verification_report import ReportStatus, Stopwatch, VerificationReport

logger = Logger("mc_duality")

DEFAULT_TRIALS = 100000
SIGMA_BAND = 3.0
HEAVY_TAIL_RATIO = 2.0
IMAGINARY_EPS = 1e-12


class RunningMoments:
    """Count, mean and sum of squared deviations, merged pairwise"""

    def __init__(self, count: int = 0, mean: float = 0.0, m2: float = 0.0):
        self.count = count
        self.mean = mean
        self.m2 = m2

    @staticmethod
    def of(values: np.ndarray) -> 'RunningMoments':
        if len(values) == 0:
            return RunningMoments()
        if np.all(values == values[0]):
            return RunningMoments(len(values), float(values[0]), 0.0)
        mean = float(np.mean(values))
        return RunningMoments(len(values), mean, float(np.sum((values - mean) ** 2)))

    def merge(self, other: 'RunningMoments') -> 'RunningMoments':
        if other.count == 0:
            return RunningMoments(self.count, self.mean, self.m2)
        if self.count == 0:
            return RunningMoments(other.count, other.mean, other.m2)
        count = self.count + other.count
        delta = other.mean - self.mean
        mean = self.mean + delta * other.count / count
        m2 = self.m2 + other.m2 + delta * delta * self.count * other.count / count
        return RunningMoments(count, mean, m2)

    def std(self) -> float:
        return math.sqrt(self.m2 / (self.count - 1)) if self.count > 1 else 0.0

    def standard_error(self) -> float:
        return self.std() / math.sqrt(self.count) if self.count else 0.0


def merge_pairwise(parts: Sequence[RunningMoments]) -> RunningMoments:
    parts = list(parts)
    if not parts:
        return RunningMoments()
    while len(parts) > 1:
        merged = [parts[m].merge(parts[m + 1]) for m in range(0, len(parts) - 1, 2)]
        if len(parts) % 2:
            merged.append(parts[-1])
        parts = merged
    return parts[0]


class McEstimate(BaseModel):
    mean: float
    standard_error: float
    trials: int
    seed: int
    heavy_tail: bool = Field(default=False)

    @staticmethod
    def of(moments: RunningMoments, seed: int, heavy_tail: bool = False) -> 'McEstimate':
        return McEstimate(mean=moments.mean, standard_error=moments.standard_error(), trials=moments.count,
                          seed=seed, heavy_tail=heavy_tail)


class McComparison(BaseModel):
    """Left and right expectations of one duality relation at time t"""
    case: str
    t: float
    dt: Optional[float] = Field(default=None)
    left: McEstimate
    right: McEstimate
    bias_allowance: float = Field(default=0.0)
    notes: List[str] = Field(default=[])

    def estimates(self) -> Tuple[McEstimate, McEstimate]:
        return self.left, self.right

    def difference(self) -> float:
        return abs(self.left.mean - self.right.mean)

    def pooled_error(self) -> float:
        return math.hypot(self.left.standard_error, self.right.standard_error)

    def z_score(self) -> float:
        pooled = self.pooled_error()
        if pooled == 0:
            return 0.0 if self.difference() == 0 else math.inf
        return self.difference() / pooled

    def report(self, band: float = SIGMA_BAND) -> VerificationReport:
        """Passes when |left - right| <= band pooled standard errors plus the step bias allowance"""
        tolerance = band * self.pooled_error() + self.bias_allowance
        notes = list(self.notes) + [f"left: {self.left.mean} +- {self.left.standard_error}",
                                    f"right: {self.right.mean} +- {self.right.standard_error}",
                                    f"z: {self.z_score()}"]
        if self.left.heavy_tail or self.right.heavy_tail:
            notes.append("heavy tail: sample std grows with the trial count")
        difference = self.difference()
        scale = max(abs(self.left.mean), abs(self.right.mean), 1e-300)
        report = VerificationReport.evaluate(self.case, ArithmeticMode.Float, difference, difference / scale,
                                             tolerance, points_checked=self.left.trials + self.right.trials,
                                             notes=notes, seed=self.left.seed)
        if self.left.heavy_tail or self.right.heavy_tail:
            report = report.model_copy(update={"status": ReportStatus.Fail})
        return report


def kernel_value(kernel: DualityKernel, a, b) -> float:
    """Bare kernel value in floating point, real valued kernels only"""
    if isinstance(kernel, JetKernel):
        value = complex(kernel.jet(float(a), float(b), 0)[0])
    else:
        value = complex(kernel.float_value(a, b))
    if abs(value.imag) > IMAGINARY_EPS * max(abs(value), 1.0):
        raise ParameterDomainError(f"Expectations need a real kernel [kernel: {kernel.label()}, a: {a}, b: {b}]")
    return value.real


def heavy_tail(values: np.ndarray) -> bool:
    """Sample std over growing prefixes keeps growing, or a value is not finite"""
    if not np.all(np.isfinite(values)):
        return True
    size = len(values)
    if size < 8:
        return False
    quarter, half = np.std(values[:size // 4]), np.std(values[:size // 2])
    full = np.std(values)
    return bool(quarter < half < full and full > HEAVY_TAIL_RATIO * quarter)


class Sampler:
    """Final states of one side for a batch of trajectories"""

    def __init__(self, spec: ProcessSpec, dt: float):
        self.__discrete = spec.is_discrete()
        self.__simulator = CtmcSimulator(spec) if self.__discrete else SdeSimulator(spec, dt)

    @property
    def discrete(self) -> bool:
        return self.__discrete

    def sample(self, init: Sequence, t: float, rng: np.random.Generator, size: int) -> List[tuple]:
        if self.__discrete:
            return self.__simulator.run_batch(init, t, rng, size)
        return [tuple(row) for row in self.__simulator.run_batch(init, t, rng, size)]


def _side(case: DualityCase, sampler: Sampler, init: Sequence, value: Callable[[tuple], float], side: Side,
          t: float, trials: int, seed: int, workers: Optional[int]) -> McEstimate:
    def batch(item: Tuple[int, int]) -> np.ndarray:
        index, size = item
        states = sampler.sample(init, t, stream(seed, side, index), size)
        return np.array([value(state) for state in states], dtype=float)

    parts = parallel_map(batch, batch_sizes(trials, BATCH_SIZE), workers)
    moments = merge_pairwise([RunningMoments.of(part) for part in parts])
    flagged = heavy_tail(np.concatenate(parts)) if parts else False
    if flagged:
        logger.warn(f"Heavy tailed kernel values [case: {case.name}, side: {side.name}]")
    return McEstimate.of(moments, seed, flagged)


def mc_duality(case: DualityCase,
               left_init: Sequence,
               right_init: Sequence,
               t: float,
               trials: int = DEFAULT_TRIALS,
               seed: int = DEFAULT_SEED,
               dt: float = DEFAULT_DT,
               workers: Optional[int] = None) -> McComparison:
    """
    Left: E[D(eta1(t), eta2)] over the left process started at eta1
    Right: E[D(eta1, eta2(t))] over the right process started at eta2
    """
    if len(left_init) != case.sites or len(right_init) != case.sites:
        raise FactorMismatchError(f"Initial states differ from the site count [sites: {case.sites}, "
                                  f"states: {list(left_init)}, {list(right_init)}]")
    if t < 0:
        raise ParameterDomainError(f"Simulation time must be non-negative [t: {t}]")
    if trials < 2:
        raise ParameterDomainError(f"Monte Carlo needs at least two trials [trials: {trials}]")
    kernels = case.kernels()
    scale = float(case.kernel_scale)
    left, right = Sampler(case.left, dt), Sampler(case.right, dt)

    def duality_value(a: Sequence, b: Sequence) -> float:
        return scale * math.prod(kernel_value(k, x, y) for k, x, y in zip(kernels, a, b))

    logger.info(f"Monte Carlo duality started [case: {case.label()}, t: {t}, trials: {trials}, seed: {seed}]")
    with Stopwatch() as watch:
        left_estimate = _side(case, left, left_init, lambda s: duality_value(s, right_init), Side.Left,
                              t, trials, seed, workers)
        right_estimate = _side(case, right, right_init, lambda s: duality_value(left_init, s), Side.Right,
                               t, trials, seed, workers)
    uses_step = not (left.discrete and right.discrete)
    comparison = McComparison(case=f"montecarlo:{case.name}:t={t}", t=t, dt=dt if uses_step else None,
                              left=left_estimate, right=right_estimate, notes=list(case.notes))
    logger.info(f"Monte Carlo duality finished [case: {case.name}, z: {comparison.z_score():.3f}, "
                f"elapsed: {watch.elapsed_ms:.0f} ms]")
    return comparison


def mc_duality_richardson(case: DualityCase,
                          left_init: Sequence,
                          right_init: Sequence,
                          t: float,
                          trials: int = DEFAULT_TRIALS,
                          seed: int = DEFAULT_SEED,
                          dt: float = DEFAULT_DT,
                          workers: Optional[int] = None) -> McComparison:
    """
    Estimate at dt with the Euler bias allowance 2 |m(dt) - m(dt/2)| per diffusion side
    Jump-only cases come back without an allowance
    """
    coarse = mc_duality(case, left_init, right_init, t, trials, seed, dt, workers)
    if coarse.dt is None:
        return coarse
    fine = mc_duality(case, left_init, right_init, t, trials, seed, dt / 2, workers)
    allowance = 0.0
    for spec, first, second in ((case.left, coarse.left, fine.left), (case.right, coarse.right, fine.right)):
        if not spec.is_discrete():
            allowance += 2 * abs(first.mean - second.mean)
    logger.debug(f"Richardson bias allowance [case: {case.name}, dt: {dt}, allowance: {allowance}]")
    return coarse.model_copy(update={"bias_allowance": allowance,
                                     "notes": coarse.notes + [f"Richardson allowance at dt={dt}: {allowance}"]})
