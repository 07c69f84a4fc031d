from enum import Enum
from fractions import Fraction
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from duality_lab.common.errors import ParameterDomainError
from duality_lab.common.scalars import parse_rational
from duality_lab.kernels.duality_kernel import DualityKernel, KernelFamily, ProductKernel
from duality_lab.kernels.kernels_loader import KernelsLoader
from duality_lab.processes.generator import MarkovGenerator
from duality_lab.processes.generators_loader import build_generator_direct
from duality_lab.processes.process_spec import ProcessSpec
from duality_lab.verification_report import CheckKind


class EvaluationPlan(str, Enum):
    # both slots discrete, exact rational values
    ExactDiscrete = "exact-discrete"
    # discrete first slot, polynomial rows in the second, compared coefficient-wise
    ExactPolynomial = "exact-polynomial"
    # analytic derivatives at float points, or float polynomial rows
    FloatAnalytic = "float-analytic"


class DualityCase(BaseModel):
    """
    Left and right process with the product kernel D(a, b) = prod_j K_j(a_j, b_j)
    grid is the largest occupancy for discrete slots, the points per variable for float slots
    """
    model_config = ConfigDict(arbitrary_types_allowed=True)

    name: str
    left: ProcessSpec
    right: ProcessSpec
    kernel: KernelFamily
    kernel_params: List[dict]
    plan: EvaluationPlan
    grid: int = Field(default=6, ge=1)
    interval: Optional[Tuple[float, float]] = Field(default=None)
    kernel_scale: Fraction = Field(default=Fraction(1))
    kind: CheckKind = Field(default=CheckKind.Identity)
    notes: List[str] = Field(default=[])
    anchor: str = Field(default="")

    @field_validator("kernel_scale", mode="before")
    @classmethod
    def parse_scale(cls, value):
        try:
            value = parse_rational(value)
        except ParameterDomainError as e:
            raise ValueError(str(e))
        if value == 0:
            raise ValueError("Kernel scale must be nonzero")
        return value

    @model_validator(mode="after")
    def check_sites(self) -> 'DualityCase':
        if self.left.sites != self.right.sites:
            raise ValueError(f"Left and right processes differ in sites [left: {self.left.sites}, "
                             f"right: {self.right.sites}]")
        if len(self.kernel_params) != self.left.sites:
            raise ValueError(f"Kernel parameter vector differs from the site count "
                             f"[params: {len(self.kernel_params)}, sites: {self.left.sites}]")
        if self.interval is not None and not self.interval[0] < self.interval[1]:
            raise ValueError(f"Empty grid interval [interval: {self.interval}]")
        return self

    @property
    def sites(self) -> int:
        return self.left.sites

    def kernels(self) -> List[DualityKernel]:
        return [KernelsLoader.load_kernel(self.kernel.value, params) for params in self.kernel_params]

    def product_kernel(self) -> ProductKernel:
        return ProductKernel(self.kernels())

    def left_generator(self) -> MarkovGenerator:
        return build_generator_direct(self.left)

    def right_generator(self) -> MarkovGenerator:
        return build_generator_direct(self.right)

    def label(self) -> str:
        return f"duality:{self.name}:{self.left.label()}|{self.right.label()}"
