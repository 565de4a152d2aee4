# core/schemas.py
"""
JSON shapes produced by the command engine.
"""

from typing import Dict, List, Optional

from pydantic import BaseModel, Field


# ---------- Field / group ----------

class FieldSpecModel(BaseModel):
    p: int
    degree: int
    modulus: List[int]


class ProjMapModel(BaseModel):
    a: int
    b: int
    c: int
    d: int


# ---------- Codes ----------

class CodeDescriptor(BaseModel):
    q: int
    n: int
    delta: Optional[int] = None
    h: Optional[int] = None
    dimension: int
    generator: List[int]
    defining_set: List[int]


class WeightDistributionModel(BaseModel):
    q: int
    n: int
    delta: int
    side: str
    method: str
    # decimal strings: counts overflow 64 bits at q = 25
    counts: List[str]


# ---------- Designs ----------

class DesignModel(BaseModel):
    v: int
    t: int
    k: int
    lambda_: int = Field(alias="lambda")
    blocks: List[List[int]]

    model_config = {"populate_by_name": True}


class ClassificationModel(BaseModel):
    p: int
    m: int
    h: int
    candidates_tested: int
    invariant_codes: List[Dict[str, object]]
    holds: bool


# ---------- Verification ----------

class CheckResult(BaseModel):
    name: str
    passed: bool
    detail: str = ""


class VerifyReport(BaseModel):
    suite: str
    parameters: Dict[str, object]
    checks: List[CheckResult]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)
