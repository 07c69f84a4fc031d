from abc import abstractmethod
from itertools import product
from typing import Callable, Dict, List, Tuple

import numpy as np
import scipy.sparse

from duality_lab.common.errors import MarginViolationError, SupportError
from duality_lab.common.scalars import scale_value
from duality_lab.processes.generator import MarkovGenerator, Provenance
from duality_lab.processes.process_spec import ProcessFamily, ProcessSpec
from duality_lab.representations.carriers import DiscreteFunction, State


def _moved(state: State, source: int, target: int) -> State:
    moved = list(state)
    moved[source] -= 1
    moved[target] += 1
    return tuple(moved)


class JumpGenerator(MarkovGenerator):
    """
    [L f](n) = sum_{i<j} r_ij(n) (f(n - e_i + e_j) - f(n)) + r_ji(n) (f(n + e_i - e_j) - f(n))
    Particles are conserved, so every sector of fixed total occupancy is closed
    """

    def __init__(self, spec: ProcessSpec):
        super().__init__(spec)
        self.__caps = spec.caps()
        self.__closed = spec.family == ProcessFamily.SEP

    @staticmethod
    @abstractmethod
    def create_generator(spec: ProcessSpec) -> 'JumpGenerator':
        pass

    @staticmethod
    @abstractmethod
    def process_family() -> ProcessFamily:
        pass

    @staticmethod
    def provenance() -> Provenance:
        return Provenance.DirectFormula

    @abstractmethod
    def pair_rates(self, i: int, j: int, state: State) -> Tuple[object, object]:
        """Rates of one particle moving i -> j and j -> i"""
        pass

    @property
    def caps(self) -> List[int]:
        return list(self.__caps)

    def check_state(self, state: State) -> None:
        if len(state) != self.sites or any(n < 0 for n in state):
            raise SupportError(f"Invalid state for {self.spec.family.value} [state: {state}]")
        if self.__closed and any(n > cap for n, cap in zip(state, self.__caps)):
            raise SupportError(f"State exceeds the site capacities [state: {state}, caps: {self.__caps}]")

    def transitions(self, state: State) -> List[Tuple[State, object]]:
        """Target states with strictly positive rate"""
        moves = []
        for i, j in self.pairs():
            forward, backward = self.pair_rates(i, j, state)
            if forward > 0:
                moves.append((_moved(state, i, j), forward))
            if backward > 0:
                moves.append((_moved(state, j, i), backward))
        return moves

    def total_rate(self, state: State):
        return sum((rate for _, rate in self.transitions(state)), 0)

    def apply_at(self, func: Callable[[State], object], state: State):
        """[L func](state), evaluated pointwise without truncation"""
        here = func(state)
        total = 0
        for target, rate in self.transitions(state):
            total = total + scale_value(rate, func(target) - here)
        return total

    def __neighbours(self, state: State) -> List[State]:
        found = []
        for i, j in self.pairs():
            for source, target in ((i, j), (j, i)):
                if state[source] > 0:
                    found.append(_moved(state, source, target))
        return found

    def __inside(self, state: State) -> bool:
        return all(n <= cap for n, cap in zip(state, self.__caps))

    def apply(self, f: DiscreteFunction) -> DiscreteFunction:
        candidates = set(f)
        for state in f:
            candidates.update(self.__neighbours(state))
        result: DiscreteFunction = {}
        for state in candidates:
            if self.__closed and not self.__inside(state):
                continue
            value = self.apply_at(lambda s: f.get(s, 0), state)
            if value == 0:
                continue
            if not self.__inside(state):
                raise MarginViolationError(f"Generator output past the truncation [state: {state}, caps: {self.__caps}]")
            result[state] = value
        return result

    def sector_states(self, total: int) -> List[State]:
        """All states with the given particle count inside the site capacities"""
        ranges = [range(0, min(total, cap) + 1) for cap in self.__caps]
        return [s for s in product(*ranges) if sum(s) == total]

    def to_matrix(self, states: List[State]) -> scipy.sparse.csr_matrix:
        """Q[a, b] = rate(a -> b) off the diagonal, minus the total rate on it"""
        index: Dict[State, int] = {s: pos for pos, s in enumerate(states)}
        matrix = scipy.sparse.lil_matrix((len(states), len(states)), dtype=float)
        for pos, state in enumerate(states):
            out = 0.0
            for target, rate in self.transitions(state):
                out += float(rate)
                if target in index:
                    matrix[pos, index[target]] = float(rate)
            matrix[pos, pos] = -out
        return matrix.tocsr()

    def to_dense(self, states: List[State]) -> np.ndarray:
        return self.to_matrix(states).toarray()


class IrwGenerator(JumpGenerator):
    """Independent walkers, each particle at i moves to j at rate 1"""

    @staticmethod
    def create_generator(spec: ProcessSpec) -> 'IrwGenerator':
        return IrwGenerator(spec)

    @staticmethod
    def process_family() -> ProcessFamily:
        return ProcessFamily.IRW

    def pair_rates(self, i: int, j: int, state: State) -> Tuple[object, object]:
        return state[i], state[j]


class SipGenerator(JumpGenerator):
    """Inclusion: i -> j at rate n_i (2k_j + n_j)"""

    def __init__(self, spec: ProcessSpec):
        super().__init__(spec)
        self._k = spec.k_values()

    @staticmethod
    def create_generator(spec: ProcessSpec) -> 'SipGenerator':
        return SipGenerator(spec)

    @staticmethod
    def process_family() -> ProcessFamily:
        return ProcessFamily.SIP

    def pair_rates(self, i: int, j: int, state: State) -> Tuple[object, object]:
        k = self._k
        return state[i] * (2 * k[j] + state[j]), state[j] * (2 * k[i] + state[i])


class SepGenerator(SipGenerator):
    """Exclusion: i -> j at rate n_i (j_j - n_j), the inclusion rates at k = -j/2 with opposite sign"""

    @staticmethod
    def create_generator(spec: ProcessSpec) -> 'SepGenerator':
        return SepGenerator(spec)

    @staticmethod
    def process_family() -> ProcessFamily:
        return ProcessFamily.SEP

    def pair_rates(self, i: int, j: int, state: State) -> Tuple[object, object]:
        forward, backward = super().pair_rates(i, j, state)
        return -forward, -backward
