from fractions import Fraction

import numpy as np
import pytest

from duality_lab.common.errors import CarrierMismatchError, FactorMismatchError, ParameterDomainError, \
    StepUnderflowError, SupportError
from duality_lab.montecarlo.checks import MC_CASES, conservation_check, determinism_check, holding_time_check, \
    simulate_reports, zero_time_check
from duality_lab.montecarlo.ctmc import CtmcSimulator, simulate_ctmc
from duality_lab.montecarlo.mc_duality import McComparison, McEstimate, RunningMoments, heavy_tail, mc_duality, \
    mc_duality_richardson, merge_pairwise
from duality_lab.montecarlo.sde import SdeSimulator, simulate_sde
from duality_lab.montecarlo.streams import Side, batch_sizes, stream
from duality_lab.processes.process_spec import ProcessSpec
from duality_lab.verification.cases_catalog import duality_case

HALF = Fraction(1, 2)
# statistical checks use wide bands on fixed seeds
BAND = 5.0

IRW = ProcessSpec(family="irw", sites=2, c=Fraction(3, 4))
SIP = ProcessSpec(family="sip", sites=2, k=[1, 1])
SEP = ProcessSpec(family="sep", sites=3, j=[1, 2, 1])
DIF = ProcessSpec(family="dif", sites=2, c=1)
BEP = ProcessSpec(family="bep", sites=3, k=[1, HALF, 2])


def test_streams_are_keyed_by_batch():
    first = stream(7, Side.Left, 3).random(5)
    assert np.array_equal(first, stream(7, Side.Left, 3).random(5))
    assert not np.array_equal(first, stream(7, Side.Left, 4).random(5))
    assert not np.array_equal(first, stream(7, Side.Right, 3).random(5))
    assert not np.array_equal(first, stream(8, Side.Left, 3).random(5))


def test_batch_sizes():
    assert batch_sizes(2500, 1000) == [(0, 1000), (1, 1000), (2, 500)]
    assert batch_sizes(1000, 1000) == [(0, 1000)]
    assert batch_sizes(0) == []


def test_ctmc_conserves_particles():
    rng = stream(1, Side.Left, 0)
    for _ in range(50):
        assert sum(simulate_ctmc(IRW, (2, 3), 2.0, rng)) == 5


def test_ctmc_zero_time_returns_init():
    assert simulate_ctmc(SIP, (4, 1), 0.0, stream(1, Side.Left, 0)) == (4, 1)


def test_ctmc_single_positive_move():
    simulator = CtmcSimulator(SIP)
    targets, cumulative, total = simulator.moves((1, 0))
    assert targets == [(0, 1)]
    assert total == 2.0
    rng = stream(3, Side.Left, 0)
    assert all(simulator.first_jump((1, 0), rng)[1] == (0, 1) for _ in range(100))


def test_ctmc_frozen_state():
    simulator = CtmcSimulator(IRW)
    holding, target = simulator.first_jump((0, 0), stream(1, Side.Left, 0))
    assert target is None
    assert holding == float("inf")


def test_sep_trajectories_respect_caps():
    simulator = CtmcSimulator(SEP)
    rng = stream(5, Side.Left, 0)
    for _ in range(50):
        trajectory = simulator.record((1, 1, 1), 3.0, rng)
        assert trajectory.times == sorted(trajectory.times)
        assert all(s[0] <= 1 and s[1] <= 2 and s[2] <= 1 for s in trajectory.states)
        assert set(trajectory.totals()) == {3}


def test_ctmc_errors():
    with pytest.raises(ParameterDomainError):
        simulate_ctmc(IRW, (1, 0), -1.0, stream(1, Side.Left, 0))
    with pytest.raises(SupportError):
        simulate_ctmc(SEP, (2, 0, 0), 1.0, stream(1, Side.Left, 0))
    with pytest.raises(CarrierMismatchError):
        CtmcSimulator(DIF)


@pytest.mark.parametrize("spec, state", [(IRW, (2, 1)), (SIP, (2, 1)), (SEP, (1, 1, 0))],
                         ids=lambda s: s.label() if isinstance(s, ProcessSpec) else str(s))
def test_holding_times(spec, state):
    report = holding_time_check(spec, state, samples=10000, seed=11, band=BAND)
    assert report.passed(), report


@pytest.mark.parametrize("spec, init", [(IRW, (3, 2)), (SEP, (1, 2, 0)), (DIF, (0.5, -1.0)), (BEP, (1.0, 0.5, 2.0))],
                         ids=lambda s: s.label() if isinstance(s, ProcessSpec) else str(s))
def test_conservation(spec, init):
    report = conservation_check(spec, init, 0.5, trials=20, dt=1e-2)
    assert report.passed(), report
    assert report.seed is not None


def test_sde_conserves_energy_and_stays_positive():
    simulator = SdeSimulator(BEP, dt=1e-2)
    points = simulator.run_batch((1.0, 0.5, 2.0), 1.0, stream(2, Side.Right, 0), 500)
    assert points.shape == (500, 3)
    assert np.all(points > 0)
    np.testing.assert_allclose(points.sum(axis=1), 3.5, rtol=1e-12)


def test_sde_zero_time():
    assert simulate_sde(DIF, (0.25, 1.5), 0.0, 1e-3, stream(2, Side.Right, 0)) == (0.25, 1.5)


def test_dif_difference_variance():
    # x_1 - x_2 is Ornstein-Uhlenbeck with rate 2 and stationary variance 2c
    simulator = SdeSimulator(DIF, dt=1e-2)
    points = simulator.run_batch((0.0, 0.0), 3.0, stream(4, Side.Right, 0), 4000)
    difference = points[:, 0] - points[:, 1]
    assert abs(np.var(difference) - 2.0) < 0.3
    assert abs(np.mean(difference)) < 0.15


def test_sde_errors(monkeypatch):
    with pytest.raises(ParameterDomainError):
        SdeSimulator(DIF, dt=0.0)
    with pytest.raises(CarrierMismatchError):
        SdeSimulator(IRW)
    with pytest.raises(CarrierMismatchError):
        SdeSimulator(ProcessSpec(family="hyp", sites=2, k=1, phi=1.0))
    with pytest.raises(SupportError):
        simulate_sde(BEP, (1.0, 0.0, 1.0), 1.0, 1e-3, stream(1, Side.Right, 0))
    with pytest.raises(SupportError):
        simulate_sde(DIF, (1.0, 0.0, 1.0), 1.0, 1e-3, stream(1, Side.Right, 0))
    monkeypatch.setattr(SdeSimulator, "_SdeSimulator__propose", lambda self, x, h, rng: -np.ones_like(x))
    with pytest.raises(StepUnderflowError):
        simulate_sde(BEP, (1.0, 1.0, 1.0), 1.0, 1e-3, stream(1, Side.Right, 0))


def test_sde_record():
    trajectory = SdeSimulator(DIF, dt=0.1).record((1.0, 0.0), 0.5, stream(6, Side.Right, 0), seed=6)
    assert len(trajectory.times) == 6
    assert trajectory.times[-1] == pytest.approx(0.5)
    assert trajectory.seed == 6
    assert all(total == pytest.approx(1.0) for total in trajectory.totals())


def test_running_moments_merge():
    values = stream(9, Side.Left, 0).normal(2.0, 3.0, 1001)
    parts = [RunningMoments.of(values[a:a + 100]) for a in range(0, 1001, 100)]
    merged = merge_pairwise(parts)
    assert merged.count == 1001
    assert merged.mean == pytest.approx(np.mean(values))
    assert merged.std() == pytest.approx(np.std(values, ddof=1))
    assert merge_pairwise([]).count == 0


def test_heavy_tail_flag():
    assert heavy_tail(np.array([(-1) ** m * (1 + m) ** 2 for m in range(400)], dtype=float))
    assert heavy_tail(np.array([1.0, np.inf, 2.0]))
    assert not heavy_tail(stream(9, Side.Left, 1).normal(0.0, 1.0, 4000))


def test_comparison_report():
    left = McEstimate(mean=1.0, standard_error=0.1, trials=100, seed=1)
    right = McEstimate(mean=1.2, standard_error=0.1, trials=100, seed=1)
    comparison = McComparison(case="montecarlo:test", t=1.0, left=left, right=right)
    assert comparison.z_score() == pytest.approx(0.2 / np.hypot(0.1, 0.1))
    assert comparison.report().passed()
    assert not comparison.report(band=1.0).passed()
    flagged = comparison.model_copy(update={"right": right.model_copy(update={"heavy_tail": True})})
    assert not flagged.report().passed()


def test_zero_time_is_exact():
    report, value = zero_time_check("irw-charlier")
    assert report.passed()
    # C_2(1) C_1(0) at c = 3/4
    assert value == pytest.approx(-5 / 3)


@pytest.mark.parametrize("name", ["irw-charlier", "sip-meixner", "sep-krawtchouk"])
def test_jump_duality_in_expectation(name):
    mc = MC_CASES[name]
    case = duality_case(name, **mc.overrides)
    comparison = mc_duality(case, mc.left_init, mc.right_init, mc.t, trials=20000, seed=2024)
    assert comparison.dt is None
    assert comparison.left.trials == comparison.right.trials == 20000
    assert comparison.report(band=BAND).passed(), comparison


def test_sip_bep_duality_with_step_bias():
    mc = MC_CASES["sip-bep-laguerre"]
    case = duality_case("sip-bep-laguerre", **mc.overrides)
    comparison = mc_duality_richardson(case, mc.left_init, mc.right_init, mc.t, trials=10000, seed=2024, dt=1e-2)
    assert comparison.dt == 1e-2
    assert comparison.bias_allowance >= 0.0
    assert any("Richardson" in note for note in comparison.notes)
    assert comparison.report(band=BAND).passed(), comparison


def test_seeded_determinism():
    report = determinism_check("sip-meixner", trials=2500, seed=5, workers=3)
    assert report.passed()
    assert report.max_abs_residual == 0.0


def test_mc_duality_errors():
    case = duality_case("irw-charlier")
    with pytest.raises(FactorMismatchError):
        mc_duality(case, (1, 0, 0), (1, 0), 0.5, trials=10)
    with pytest.raises(ParameterDomainError):
        mc_duality(case, (1, 0), (1, 0), -0.5, trials=10)
    with pytest.raises(ParameterDomainError):
        mc_duality(case, (1, 0), (1, 0), 0.5, trials=1)
    with pytest.raises(ParameterDomainError):
        mc_duality(duality_case("dif-exp"), (0.5, 1.0), (0.3, 0.2), 0.0, trials=10)


def test_simulate_reports_carry_seed():
    reports = simulate_reports(["irw-charlier"], trials=2000, seed=13)
    assert len(reports) == 1
    assert reports[0].case.startswith("montecarlo:irw-charlier")
    assert reports[0].seed == 13
    assert reports[0].wall_time_ms > 0
