import math
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from duality_lab.common.logger import Logger
from duality_lab.common.scalars import ArithmeticMode
from duality_lab.montecarlo.ctmc import CtmcSimulator
from duality_lab.montecarlo.mc_duality import DEFAULT_TRIALS, SIGMA_BAND, mc_duality, mc_duality_richardson
from duality_lab.montecarlo.sde import DEFAULT_DT, SdeSimulator
from duality_lab.montecarlo.streams import DEFAULT_SEED, Side, stream
from duality_lab.processes.process_spec import ProcessSpec
from duality_lab.verification.cases_catalog import duality_case
from duality_lab.verification_report import CheckKind, ResidualAccumulator, Stopwatch, VerificationReport

logger = Logger("montecarlo_checks")

CONSERVATION_TOLERANCE = 1e-9


class McCase:
    """Initial states and time for the expectation form of one catalog case"""

    def __init__(self, name: str, left_init: Sequence, right_init: Sequence, t: float, overrides: Optional[dict] = None):
        self.name = name
        self.left_init = tuple(left_init)
        self.right_init = tuple(right_init)
        self.t = t
        self.overrides = dict(overrides or {})


# dif-exp has no integrable expectation form and the hyperbolic process has no real-valued sample paths
MC_CASES: Dict[str, McCase] = {
    "irw-charlier": McCase("irw-charlier", (2, 1), (1, 0), 0.5),
    "irw-dif-hermite": McCase("irw-dif-hermite", (2, 1), (0.5, -0.5), 0.3),
    "sip-meixner": McCase("sip-meixner", (2, 1), (1, 0), 0.5),
    "sep-krawtchouk": McCase("sep-krawtchouk", (2, 1), (1, 0), 0.5),
    "sip-bep-laguerre": McCase("sip-bep-laguerre", (2, 1), (1.0, 0.5), 0.3, {"k": [1, 1]}),
    "bep-bessel": McCase("bep-bessel", (1.0, 2.0), (0.5, 1.5), 0.3, {"k": [1, 1]}),
}


def holding_time_check(spec: ProcessSpec, state: Sequence[int], samples: int = 10000,
                       seed: int = DEFAULT_SEED, band: float = SIGMA_BAND) -> VerificationReport:
    """Mean holding time of a frozen state against 1 / total rate"""
    simulator = CtmcSimulator(spec)
    total = simulator.moves(tuple(state))[2]
    with Stopwatch() as watch:
        times = simulator.holding_times(state, samples, stream(seed, Side.Left, 0))
    expected = 1.0 / total
    error = float(np.std(times, ddof=1) / math.sqrt(samples))
    residual = abs(float(np.mean(times)) - expected)
    return VerificationReport.evaluate(f"holding-time:{spec.label()}:{tuple(state)}",
                                       ArithmeticMode.Float, residual, residual / expected, band * error,
                                       points_checked=samples, seed=seed,
                                       notes=[f"expected mean: {expected}"]).with_timing(watch.elapsed_ms)


def conservation_check(spec: ProcessSpec, init: Sequence, t: float, trials: int = 200,
                       seed: int = DEFAULT_SEED, dt: float = DEFAULT_DT) -> VerificationReport:
    """Total occupancy or energy along recorded paths"""
    total = sum(init)
    acc = ResidualAccumulator()
    with Stopwatch() as watch:
        rng = stream(seed, Side.Left, 0)
        simulator = CtmcSimulator(spec) if spec.is_discrete() else SdeSimulator(spec, dt)
        for _ in range(trials):
            for value in simulator.record(init, t, rng, seed).totals():
                if spec.is_discrete():
                    acc.add(value, total)
                else:
                    acc.add_residual(abs(value - total), max(abs(total), 1.0))
    exact = spec.is_discrete()
    mode = ArithmeticMode.Exact if exact else ArithmeticMode.Float
    report = acc.report(f"conservation:{spec.label()}", mode,
                        0.0 if exact else CONSERVATION_TOLERANCE, relative=not exact)
    return report.model_copy(update={"seed": seed}).with_timing(watch.elapsed_ms)


def determinism_check(name: str, trials: int = 2000, seed: int = DEFAULT_SEED, dt: float = DEFAULT_DT,
                      workers: Optional[int] = None) -> VerificationReport:
    """Two runs with one seed agree bit for bit, whatever the worker count"""
    mc = MC_CASES[name]
    case = duality_case(name, **mc.overrides)
    with Stopwatch() as watch:
        first = mc_duality(case, mc.left_init, mc.right_init, mc.t, trials, seed, dt, workers=1)
        second = mc_duality(case, mc.left_init, mc.right_init, mc.t, trials, seed, dt, workers)
    gap = max(abs(first.left.mean - second.left.mean), abs(first.right.mean - second.right.mean))
    return VerificationReport.evaluate(f"determinism:{name}:seed={seed}", ArithmeticMode.Float, gap, gap, 0.0,
                                       points_checked=2 * trials, seed=seed).with_timing(watch.elapsed_ms)


def simulate_reports(names: Optional[List[str]] = None,
                     t: Optional[float] = None,
                     trials: int = DEFAULT_TRIALS,
                     seed: int = DEFAULT_SEED,
                     dt: float = DEFAULT_DT,
                     overrides: Optional[dict] = None,
                     richardson: bool = True,
                     workers: Optional[int] = None) -> List[VerificationReport]:
    """Expectation-form duality for the selected simulatable cases"""
    reports = []
    for name in names or list(MC_CASES.keys()):
        mc = MC_CASES[name]
        case = duality_case(name, **{**mc.overrides, **(overrides or {})})
        at = mc.t if t is None else t
        run = mc_duality_richardson if richardson else mc_duality
        with Stopwatch() as watch:
            comparison = run(case, mc.left_init, mc.right_init, at, trials, seed, dt, workers)
        reports.append(comparison.report().with_timing(watch.elapsed_ms))
    return reports


def zero_time_check(name: str, trials: int = 100, seed: int = DEFAULT_SEED) -> Tuple[VerificationReport, float]:
    """At t = 0 both sides equal D(eta1, eta2) with zero spread; returns the report and the common value"""
    mc = MC_CASES[name]
    case = duality_case(name, **mc.overrides)
    comparison = mc_duality(case, mc.left_init, mc.right_init, 0.0, trials, seed)
    spread = comparison.left.standard_error + comparison.right.standard_error
    report = VerificationReport.evaluate(f"zero-time:{name}", ArithmeticMode.Float,
                                         comparison.difference() + spread, 0.0, 0.0,
                                         points_checked=2 * trials, kind=CheckKind.Identity, seed=seed)
    return report, comparison.left.mean
