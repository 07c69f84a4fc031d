import math
from enum import Enum
from fractions import Fraction
from typing import List, Optional

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from duality_lab.common.errors import ConfigError, ParameterDomainError
from duality_lab.common.scalars import parse_rational
from duality_lab.montecarlo.checks import MC_CASES
from duality_lab.montecarlo.mc_duality import DEFAULT_TRIALS
from duality_lab.montecarlo.sde import DEFAULT_DT
from duality_lab.montecarlo.streams import DEFAULT_SEED
from duality_lab.verification.cases_catalog import duality_case_names

CASES_KEY = 'case'
COMMAND_KEY = 'command'


class Command(str, Enum):
    VerifyAlgebra = "verify-algebra"
    VerifyDuality = "verify-duality"
    VerifyOrthogonality = "verify-orthogonality"
    Simulate = "simulate"
    All = "all"


class OutputFormat(str, Enum):
    Json = "json"
    Csv = "csv"


def _split(value) -> list:
    if isinstance(value, str):
        return [part.strip() for part in value.split(",") if part.strip()]
    return list(value) if isinstance(value, (list, tuple)) else [value]


def _rational(value) -> Fraction:
    try:
        return parse_rational(value)
    except ParameterDomainError as e:
        raise ValueError(str(e))


class RunConfig(BaseModel):
    """One batch run, read from a flat JSON or YAML object whose keys mirror the flag names"""
    model_config = ConfigDict(populate_by_name=True, extra="forbid", arbitrary_types_allowed=True)

    command: Command
    cases: List[str] = Field(default=[], alias="case")
    all_checks: bool = Field(default=False, alias="all")
    c: Optional[Fraction] = Field(default=None)
    k: Optional[List[Fraction]] = Field(default=None)
    j: Optional[List[int]] = Field(default=None)
    phi: Optional[float] = Field(default=None)
    trunc: Optional[int] = Field(default=None, ge=1)
    max_degree: Optional[int] = Field(default=None, alias="maxdeg", ge=2)
    grid: Optional[int] = Field(default=None, ge=1)
    tolerance: Optional[float] = Field(default=None, gt=0)
    t: Optional[float] = Field(default=None, ge=0)
    dt: float = Field(default=DEFAULT_DT, gt=0)
    trials: int = Field(default=DEFAULT_TRIALS, ge=2)
    seed: int = Field(default=DEFAULT_SEED)
    output_format: OutputFormat = Field(default=OutputFormat.Json, alias="format")
    output: Optional[str] = Field(default=None)
    workers: Optional[int] = Field(default=None, ge=1)
    controls: Optional[bool] = Field(default=None)
    richardson: bool = Field(default=True)

    @field_validator("cases", mode="before")
    @classmethod
    def parse_cases(cls, value):
        return [] if value is None else [str(v) for v in _split(value)]

    @field_validator("c", mode="before")
    @classmethod
    def parse_c(cls, value):
        return None if value is None else _rational(value)

    @field_validator("k", mode="before")
    @classmethod
    def parse_k(cls, value):
        return None if value is None else [_rational(v) for v in _split(value)]

    @field_validator("j", mode="before")
    @classmethod
    def parse_j(cls, value):
        return None if value is None else [int(v) for v in _split(value)]

    @model_validator(mode="after")
    def check_parameters(self) -> 'RunConfig':
        if self.c is not None and self.c <= 0:
            raise ValueError(f"c must be positive [c: {self.c}]")
        if self.k is not None and any(v <= 0 for v in self.k):
            raise ValueError(f"every k must be positive [k: {[str(v) for v in self.k]}]")
        if self.j is not None and any(v < 1 for v in self.j):
            raise ValueError(f"every j must be at least 1 [j: {self.j}]")
        if self.phi is not None and not 0 < self.phi < math.pi:
            raise ValueError(f"phi must lie in (0, pi) [phi: {self.phi}]")
        known = list(MC_CASES.keys()) if self.command == Command.Simulate else duality_case_names()
        unknown = [name for name in self.cases if name not in known]
        if unknown:
            raise ValueError(f"unknown cases for {self.command.value} [cases: {unknown}, known: {known}]")
        return self

    def case_overrides(self) -> dict:
        """Catalog overrides from the parameters given, trunc doubles as the duality grid"""
        overrides = {}
        for key, value in (("c", self.c), ("k", self.k), ("j", self.j), ("phi", self.phi),
                           ("maxdeg", self.max_degree), ("grid", self.grid if self.grid is not None else self.trunc)):
            if value is not None:
                overrides[key] = value
        return overrides

    def with_controls(self) -> bool:
        return self.controls if self.controls is not None else not self.cases

    @staticmethod
    def create_run_config(config: dict) -> 'RunConfig':
        try:
            return RunConfig.model_validate(config)
        except ValidationError as e:
            raise ConfigError(f"Invalid run config [errors: {e.error_count()}]\n{e}")


def load_config_file(config_path: str) -> dict:
    """Flat JSON or YAML object, JSON being a subset of YAML"""
    try:
        with open(config_path, 'r') as stream:
            config = yaml.safe_load(stream)
    except (OSError, yaml.YAMLError) as e:
        raise ConfigError(f"Could not read run config [path: {config_path}, error: {e}]")
    if config is None:
        return {}
    if not isinstance(config, dict):
        raise ConfigError(f"Run config must be a flat object [path: {config_path}]")
    return config
