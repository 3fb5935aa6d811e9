"""
Report schemas written by the test and check commands.
"""
import json
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field


class _Report(BaseModel):
    def to_json(self) -> str:
        """Canonical JSON: sorted keys, no timestamps; identical inputs give identical bytes."""
        return json.dumps(self.model_dump(), sort_keys=True, indent=2)


class TestReport(_Report):
    """Outcome of one classification-permutation test."""
    __test__ = False

    method: str = "cpc"
    R: float = Field(..., ge=0, le=1)
    sigma_hat_sq: float
    statistic: float
    p_value: float = Field(..., ge=0, le=1)
    tie_count: int
    variance_floored: bool
    seed: int
    tie_seed: int
    classifier: Dict[str, Any]
    n: int
    n1: int
    n2: int
    d1: int
    d2: int
    standardized: bool
    split: str = "seeded_shuffle"
    t_statistic: Optional[float] = None
    kl_statistic: Optional[float] = None
    warnings: List[str] = Field(default_factory=list)
    config: Dict[str, Any] = Field(default_factory=dict)


class DcorResult(BaseModel):
    dcov_sq: float = Field(..., ge=0)
    dcor: float
    p_value: Optional[float] = None


class DcorReport(_Report):
    method: str = "dcor"
    dcov_sq: float
    dcor: float
    p_value: float
    permutations: int
    seed: int
    n: int
    d1: int
    d2: int
    warnings: List[str] = Field(default_factory=list)
    config: Dict[str, Any] = Field(default_factory=dict)


class CheckResult(BaseModel):
    name: str
    passed: bool
    detail: Dict[str, Any] = Field(default_factory=dict)


class CheckReport(_Report):
    passed: bool
    fast: bool
    seed: int
    checks: List[CheckResult]
