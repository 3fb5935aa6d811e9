"""
Experiment configuration schemas and the flat key=value file reader.

Config files hold one `key = value` per line (dotenv syntax); list values
are comma separated, optionally wrapped in brackets.
"""
import os
from typing import List, Literal, Optional, Type, TypeVar, Union, get_args, get_origin

from dotenv import dotenv_values
from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from app.core.config import settings
from app.core.exceptions import DataFileNotFound, InvalidConfig
from app.simlab.generators import MODEL_IDS

Method = Literal["cpc", "dcor", "cpc_t", "cpc_kl"]


def _is_list(annotation) -> bool:
    if get_origin(annotation) in (list, List):
        return True
    if get_origin(annotation) is Union:
        return any(_is_list(arg) for arg in get_args(annotation))
    return False


class FlatConfig(BaseModel):
    master_seed: int = settings.DEFAULT_SEED
    jobs: int = Field(settings.JOBS, ge=1)

    class Config:
        extra = "forbid"

    @model_validator(mode="before")
    @classmethod
    def _split_lists(cls, data):
        if not isinstance(data, dict):
            return data
        out = dict(data)
        for name, field in cls.model_fields.items():
            value = out.get(name)
            if isinstance(value, str) and _is_list(field.annotation):
                items = (v.strip().strip("'\"") for v in value.strip().strip("[]").split(","))
                out[name] = [v for v in items if v]
        return out


class PowerConfig(FlatConfig):
    models: List[str] = ["M1"]
    a_grid: List[float] = [0.0, 0.25, 0.5, 0.75, 1.0]
    n: int = Field(1000, ge=8)
    d1: int = Field(10, ge=1)
    d2: int = Field(10, ge=1)
    d_grid: Optional[List[int]] = None
    alphas: List[float] = [0.01, 0.05, 0.1]
    reps: int = Field(500, ge=1)
    methods: List[Method] = ["cpc"]
    classifier: Literal["mlp", "logistic", "quadratic"] = settings.DEFAULT_CLASSIFIER
    covariance: Literal["identity", "ar1"] = "identity"
    rho: float = Field(0.5, gt=-1, lt=1)
    tails: Literal["gaussian", "student_t"] = "gaussian"
    permutations: int = Field(settings.DCOR_PERMUTATIONS, ge=1)
    standardize: bool = settings.STANDARDIZE

    @field_validator("models")
    @classmethod
    def _known_models(cls, value):
        unknown = [m for m in value if m not in MODEL_IDS]
        if unknown:
            raise ValueError(f"unknown model id(s) {unknown}; choose from {list(MODEL_IDS)}")
        return value

    @field_validator("alphas")
    @classmethod
    def _alpha_range(cls, value):
        if any(not 0 < a < 1 for a in value):
            raise ValueError("alphas must lie in (0, 1)")
        return value


class CalibrationConfig(FlatConfig):
    experiment: Literal["null", "variance", "projection", "drift"] = "null"
    n: int = Field(2000, ge=8)
    d1: int = Field(2, ge=1)
    d2: int = Field(2, ge=1)
    reps: int = Field(500, ge=1)
    classifier: Literal["mlp", "logistic", "quadratic"] = "logistic"
    n_grid: List[int] = [200, 400, 800, 1600]
    drift_c: float = 2.0
    reference_size: int = Field(200_000, ge=1000)
    standardize: bool = settings.STANDARDIZE

    @model_validator(mode="after")
    def _null_reps(self):
        if self.experiment == "null" and self.reps < 50:
            raise ValueError("null calibration needs reps >= 50")
        return self


class BenchConfig(FlatConfig):
    n_grid: List[int] = [1000, 2000]
    d_grid: List[int] = [100]
    methods: List[Literal["cpc", "dcor"]] = ["cpc", "dcor"]
    reps: int = Field(3, ge=1)
    classifier: Literal["mlp", "logistic", "quadratic"] = "logistic"
    permutations: int = Field(settings.DCOR_PERMUTATIONS, ge=1)
    rank_sum_grid: List[int] = [10_000, 100_000]


class LassoRateConfig(FlatConfig):
    d: int = Field(20, ge=1)
    s1: int = Field(1, ge=1)
    s2: int = Field(3, ge=0)
    k_n: int = Field(3, ge=1)
    n_grid: List[int] = [250, 500, 1000, 2000]
    reps: int = Field(20, ge=1)
    c_lambda: float = Field(1.0, gt=0)
    amplitude: float = Field(0.3, gt=0)


class MuConditionConfig(FlatConfig):
    rho: float = 5.0
    n_grid: List[int] = [100, 1000, 10_000]
    reps: int = Field(20, ge=1)
    mc_size: int = Field(200_000, ge=100)


ConfigT = TypeVar("ConfigT", bound=FlatConfig)


def build_config(model_cls: Type[ConfigT], values: dict) -> ConfigT:
    try:
        return model_cls(**values)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(p) for p in first.get("loc", ())) or "config"
        raise InvalidConfig(f"Invalid value for '{where}': {first.get('msg')}", hint=str(e))


def load_config(path: str, model_cls: Type[ConfigT], overrides: dict = None) -> ConfigT:
    """Read a key=value file; overrides (e.g. from flags) win over file values."""
    values = {}
    if path:
        if not os.path.exists(path):
            raise DataFileNotFound(path)
        values = {k.strip().lower(): v for k, v in dotenv_values(path).items() if v is not None}
    values.update({k: v for k, v in (overrides or {}).items() if v is not None})
    return build_config(model_cls, values)
