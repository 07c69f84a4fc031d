from enum import Enum
from typing import List, Tuple

import numpy as np

DEFAULT_SEED = 42
BATCH_SIZE = 1000


class Side(int, Enum):
    Left = 0
    Right = 1


def stream(seed: int, side: Side, batch: int) -> np.random.Generator:
    """Independent generator for one batch, keyed by (seed, side, batch) and not by the worker running it"""
    sequence = np.random.SeedSequence(entropy=int(seed), spawn_key=(int(side), int(batch)))
    return np.random.default_rng(sequence)


def batch_sizes(trials: int, batch_size: int = BATCH_SIZE) -> List[Tuple[int, int]]:
    """(batch index, size) pairs covering trials"""
    if trials < 1:
        return []
    full, rest = divmod(int(trials), batch_size)
    sizes = [(index, batch_size) for index in range(full)]
    if rest:
        sizes.append((full, rest))
    return sizes
