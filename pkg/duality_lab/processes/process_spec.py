import math
from enum import Enum
from fractions import Fraction
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from duality_lab.common.errors import ParameterDomainError
from duality_lab.common.scalars import parse_rational

DEFAULT_TRUNC = 12
DEFAULT_MAX_DEGREE = 8


class ProcessFamily(str, Enum):
    IRW = "irw"
    DIF = "dif"
    SIP = "sip"
    SEP = "sep"
    BEP = "bep"
    HYP = "hyp"


class GeneratorVariant(str, Enum):
    # form forced by the algebraic construction
    Derived = "derived"
    # literal displayed form, kept as a negative control
    Printed = "printed"


DISCRETE_FAMILIES = (ProcessFamily.IRW, ProcessFamily.SIP, ProcessFamily.SEP)
DIFFUSION_FAMILIES = (ProcessFamily.DIF, ProcessFamily.BEP)


def _rational(value) -> Fraction:
    try:
        return parse_rational(value)
    except ParameterDomainError as e:
        raise ValueError(str(e))


class ProcessSpec(BaseModel):
    model_config = ConfigDict(populate_by_name=True, arbitrary_types_allowed=True)

    family: ProcessFamily
    sites: int = Field(default=2, ge=2)
    c: Optional[Fraction] = Field(default=None)
    k: Optional[List[Fraction]] = Field(default=None)
    j: Optional[List[int]] = Field(default=None)
    phi: Optional[float] = Field(default=None)
    trunc: int = Field(default=DEFAULT_TRUNC, ge=2)
    max_degree: int = Field(default=DEFAULT_MAX_DEGREE, alias="maxdeg", ge=2)
    variant: GeneratorVariant = Field(default=GeneratorVariant.Derived)

    @field_validator("c", mode="before")
    @classmethod
    def parse_c(cls, value):
        return None if value is None else _rational(value)

    @field_validator("k", mode="before")
    @classmethod
    def parse_k(cls, value):
        if value is None:
            return None
        values = value if isinstance(value, (list, tuple)) else [value]
        return [_rational(v) for v in values]

    @field_validator("j", mode="before")
    @classmethod
    def parse_j(cls, value):
        if value is None:
            return None
        return list(value) if isinstance(value, (list, tuple)) else [value]

    @model_validator(mode="after")
    def check_family_parameters(self) -> 'ProcessSpec':
        family = self.family
        if family in (ProcessFamily.IRW, ProcessFamily.DIF):
            if self.c is None or self.c <= 0:
                raise ValueError(f"{family.value} needs c > 0 [c: {self.c}]")
        if family in (ProcessFamily.SIP, ProcessFamily.BEP, ProcessFamily.HYP):
            if not self.k:
                raise ValueError(f"{family.value} needs the site parameters k")
            if len(self.k) == 1:
                self.k = self.k * self.sites
            if len(self.k) != self.sites:
                raise ValueError(f"Parameter vector k differs from the site count [k: {len(self.k)}, sites: {self.sites}]")
            if any(v <= 0 for v in self.k):
                raise ValueError(f"{family.value} needs every k > 0 [k: {[str(v) for v in self.k]}]")
        if family == ProcessFamily.SEP:
            if not self.j:
                raise ValueError("sep needs the site capacities j")
            if len(self.j) == 1:
                self.j = self.j * self.sites
            if len(self.j) != self.sites:
                raise ValueError(f"Parameter vector j differs from the site count [j: {len(self.j)}, sites: {self.sites}]")
            if any(v < 1 for v in self.j):
                raise ValueError(f"sep needs every j >= 1 [j: {self.j}]")
        if family == ProcessFamily.HYP:
            if self.phi is None or not 0 < self.phi < math.pi:
                raise ValueError(f"hyp needs 0 < phi < pi [phi: {self.phi}]")
        return self

    def is_discrete(self) -> bool:
        return self.family in DISCRETE_FAMILIES

    def k_values(self) -> List[Fraction]:
        """Per-site su(1,1) parameters, -j/2 for the exclusion process"""
        if self.family == ProcessFamily.SEP:
            return [Fraction(-v, 2) for v in self.j]
        if self.k is None:
            raise ParameterDomainError(f"{self.family.value} has no k parameters")
        return list(self.k)

    def caps(self) -> List[int]:
        """Largest occupancy per site of the discrete state space in use"""
        if self.family == ProcessFamily.SEP:
            return list(self.j)
        return [self.trunc] * self.sites

    def label(self) -> str:
        parts = [f"N={self.sites}"]
        if self.c is not None:
            parts.append(f"c={self.c}")
        if self.k is not None:
            parts.append("k=(" + ",".join(str(v) for v in self.k) + ")")
        if self.j is not None:
            parts.append("j=(" + ",".join(str(v) for v in self.j) + ")")
        if self.phi is not None:
            parts.append(f"phi={self.phi:.6g}")
        if self.variant != GeneratorVariant.Derived:
            parts.append(self.variant.value)
        return f"{self.family.value}({','.join(parts)})"
