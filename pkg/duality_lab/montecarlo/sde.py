from typing import Optional, Sequence

import numpy as np

from duality_lab.common.errors import CarrierMismatchError, ParameterDomainError, StepUnderflowError, SupportError
from duality_lab.common.logger import Logger
from duality_lab.montecarlo.trajectory import Trajectory
from duality_lab.processes.diffusion import DiffusionGenerator
from duality_lab.processes.generators_loader import build_generator_direct
from duality_lab.processes.process_spec import ProcessFamily, ProcessSpec

logger = Logger("sde")

DEFAULT_DT = 1e-3
MAX_HALVINGS = 20
TIME_EPS = 1e-12


class SdeSimulator:
    """
    Euler-Maruyama with one Wiener increment per site pair:
    dX_i = -dX_j = b_ij dt + sqrt(2 a_ij) dW_ij
    BEP steps leaving the positive orthant are redrawn with half the step, at most MAX_HALVINGS times in a row
    """

    def __init__(self, spec: ProcessSpec, dt: float = DEFAULT_DT):
        generator = build_generator_direct(spec)
        if not isinstance(generator, DiffusionGenerator):
            raise CarrierMismatchError(f"Euler-Maruyama simulation needs a diffusion [family: {spec.family.value}]")
        if not dt > 0:
            raise ParameterDomainError(f"Step size must be positive [dt: {dt}]")
        self.__spec = spec
        self.__generator = generator
        self.__dt = float(dt)
        self.__positive = spec.family == ProcessFamily.BEP

    @property
    def spec(self) -> ProcessSpec:
        return self.__spec

    @property
    def dt(self) -> float:
        return self.__dt

    def __start(self, init: Sequence[float], t: float) -> np.ndarray:
        if t < 0:
            raise ParameterDomainError(f"Simulation time must be non-negative [t: {t}]")
        point = np.asarray(init, dtype=float)
        if point.shape != (self.__spec.sites,):
            raise SupportError(f"Initial point differs from the site count [point: {list(point)}, "
                               f"sites: {self.__spec.sites}]")
        if self.__positive and np.any(point <= 0):
            raise SupportError(f"BEP starts from strictly positive energies [point: {list(point)}]")
        return point

    def __propose(self, x: np.ndarray, h: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        proposal = x.copy()
        columns = [x[:, i] for i in range(x.shape[1])]
        root = np.sqrt(h)
        for i, j, drift, noise in self.__generator.pair_increments(columns):
            delta = drift * h + noise * root * rng.standard_normal(len(h))
            proposal[:, i] += delta
            proposal[:, j] -= delta
        return proposal

    def run_batch(self, init: Sequence[float], t: float, rng: np.random.Generator, size: int) -> np.ndarray:
        """Final points of size independent trajectories, one row each"""
        point = self.__start(init, t)
        x = np.tile(point, (size, 1))
        remaining = np.full(size, float(t))
        step = np.minimum(self.__dt, remaining)
        halvings = np.zeros(size, dtype=int)
        done = TIME_EPS * max(float(t), 1.0)
        active = np.nonzero(remaining > done)[0]
        while len(active):
            proposal = self.__propose(x[active], step[active], rng)
            ok = np.all(proposal > 0, axis=1) if self.__positive else np.ones(len(active), dtype=bool)
            good, bad = active[ok], active[~ok]
            x[good] = proposal[ok]
            remaining[good] -= step[good]
            step[good] = np.minimum(self.__dt, remaining[good])
            halvings[good] = 0
            step[bad] /= 2
            halvings[bad] += 1
            if np.any(halvings > MAX_HALVINGS):
                raise StepUnderflowError(f"Step rejected {MAX_HALVINGS} times in a row [dt: {self.__dt}, "
                                         f"family: {self.__spec.family.value}]")
            active = active[remaining[active] > done]
        return x

    def run(self, init: Sequence[float], t: float, rng: np.random.Generator) -> tuple:
        return tuple(float(v) for v in self.run_batch(init, t, rng, 1)[0])

    def record(self, init: Sequence[float], t: float, rng: np.random.Generator, seed: Optional[int] = None) -> Trajectory:
        """Path sampled once per dt"""
        point = tuple(float(v) for v in self.__start(init, t))
        times, states = [0.0], [point]
        elapsed = 0.0
        while t - elapsed > TIME_EPS * max(float(t), 1.0):
            h = min(self.__dt, t - elapsed)
            point = self.run(point, h, rng)
            elapsed += h
            times.append(elapsed)
            states.append(point)
        return Trajectory(family=self.__spec.family, times=times, states=states, seed=seed)


def simulate_sde(spec: ProcessSpec, init: Sequence[float], t: float, dt: float, rng: np.random.Generator) -> tuple:
    return SdeSimulator(spec, dt).run(init, t, rng)
