from typing import List, Optional

from pydantic import BaseModel, Field

from duality_lab.processes.process_spec import ProcessFamily


class Trajectory(BaseModel):
    """Recorded path of one simulated process, states[m] holds from times[m] on"""
    family: ProcessFamily
    times: List[float]
    states: List[tuple]
    seed: Optional[int] = Field(default=None)

    def final(self) -> tuple:
        return self.states[-1]

    def totals(self) -> List[float]:
        return [sum(state) for state in self.states]
