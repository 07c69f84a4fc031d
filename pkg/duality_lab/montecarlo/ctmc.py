import math
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from duality_lab.common.errors import CarrierMismatchError, ParameterDomainError
from duality_lab.common.logger import Logger
from duality_lab.montecarlo.trajectory import Trajectory
from duality_lab.processes.generators_loader import build_generator_direct
from duality_lab.processes.jump import JumpGenerator
from duality_lab.processes.process_spec import ProcessSpec
from duality_lab.representations.carriers import State

logger = Logger("ctmc")

Moves = Tuple[List[State], np.ndarray, float]


class CtmcSimulator:
    """
    Gillespie simulation of a jump process
    Holding times are exponential with the total outgoing rate, the jump is picked proportionally to its rate
    """

    def __init__(self, spec: ProcessSpec):
        generator = build_generator_direct(spec)
        if not isinstance(generator, JumpGenerator):
            raise CarrierMismatchError(f"Gillespie simulation needs a jump process [family: {spec.family.value}]")
        self.__spec = spec
        self.__generator = generator
        self.__moves: Dict[State, Moves] = {}

    @property
    def spec(self) -> ProcessSpec:
        return self.__spec

    def moves(self, state: State) -> Moves:
        """Targets, cumulative rates and total rate out of state"""
        if state not in self.__moves:
            transitions = self.__generator.transitions(state)
            targets = [target for target, _ in transitions]
            cumulative = np.cumsum([float(rate) for _, rate in transitions]) if transitions else np.zeros(0)
            total = float(cumulative[-1]) if len(cumulative) else 0.0
            self.__moves[state] = (targets, cumulative, total)
        return self.__moves[state]

    def first_jump(self, state: State, rng: np.random.Generator) -> Tuple[float, Optional[State]]:
        targets, cumulative, total = self.moves(state)
        if total <= 0:
            return math.inf, None
        holding = rng.exponential(1.0 / total)
        pick = int(np.searchsorted(cumulative, rng.random() * total, side="right"))
        return holding, targets[min(pick, len(targets) - 1)]

    def __start(self, init: Sequence[int], t: float) -> State:
        if t < 0:
            raise ParameterDomainError(f"Simulation time must be non-negative [t: {t}]")
        state = tuple(int(n) for n in init)
        self.__generator.check_state(state)
        return state

    def run(self, init: Sequence[int], t: float, rng: np.random.Generator) -> State:
        state = self.__start(init, t)
        elapsed = 0.0
        while True:
            holding, target = self.first_jump(state, rng)
            elapsed += holding
            if target is None or elapsed > t:
                return state
            state = target

    def record(self, init: Sequence[int], t: float, rng: np.random.Generator, seed: Optional[int] = None) -> Trajectory:
        state = self.__start(init, t)
        times, states = [0.0], [state]
        elapsed = 0.0
        while True:
            holding, target = self.first_jump(state, rng)
            elapsed += holding
            if target is None or elapsed > t:
                break
            state = target
            times.append(elapsed)
            states.append(state)
        return Trajectory(family=self.__spec.family, times=times, states=states, seed=seed)

    def run_batch(self, init: Sequence[int], t: float, rng: np.random.Generator, size: int) -> List[State]:
        return [self.run(init, t, rng) for _ in range(size)]

    def holding_times(self, state: Sequence[int], samples: int, rng: np.random.Generator) -> np.ndarray:
        state = self.__start(state, 0.0)
        return np.array([self.first_jump(state, rng)[0] for _ in range(samples)])


def simulate_ctmc(spec: ProcessSpec, init: Sequence[int], t: float, rng: np.random.Generator) -> State:
    return CtmcSimulator(spec).run(init, t, rng)
