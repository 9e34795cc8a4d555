"""Request/response models shared by the HTTP API and the CLI.

Field declaration order is the serialization order; the CLI relies on that
for reproducible reports.
"""

from typing import Literal

from pydantic import BaseModel, Field

SCHEMA_VERSION = 1

NormName = Literal["one", "two", "inf"]


class NormIn(BaseModel):
    p: NormName = "inf"
    scaling: list[float] | None = None


class NormOut(BaseModel):
    p: NormName
    scaling: list[float] | None = None


class CondnumRequest(BaseModel):
    matrix: list[list[float]]
    norm: NormIn = Field(default_factory=NormIn)
    method: str = "exact"
    enum_limit: int = 14
    gamma: float | None = None
    radii: list[float] | None = None
    permutation: list[int] | None = None


class CondnumResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    command: Literal["condnum"] = "condnum"
    n: int
    norm: NormOut
    method: str
    kind: Literal["exact", "upper_bound", "not_applicable"]
    value: float | None
    witness: list[float] | None
    params: dict
    note: str = ""


class CertifyRequest(BaseModel):
    matrix: list[list[float]]
    rhs: list[float]
    candidate: list[float]
    norm: NormIn = Field(default_factory=NormIn)
    method: str = "exact"
    enum_limit: int = 14


class CertifyResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    command: Literal["certify"] = "certify"
    n: int
    norm: NormOut
    method: str
    kind: Literal["exact", "upper_bound", "not_applicable"]
    cond_value: float | None
    residual_norm: float | None
    abs_bound: float | None
    rel_bound_upper: float | None
    rel_bound_lower: float | None
    note: str = ""


class RegularityRequest(BaseModel):
    matrix: list[list[float]]
    method: str = "auto"
    enum_limit: int = 20


class RegularityResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    command: Literal["regularity"] = "regularity"
    n: int
    method: str
    verdict: Literal["regular", "not_regular", "unknown"]
    witness: list[float] | None
    note: str = ""


class SolveRequest(BaseModel):
    matrix: list[list[float]]
    rhs: list[float]


class SolutionOut(BaseModel):
    x: list[float]
    signs: list[float]
    residual_norm_inf: float


class SolveResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    command: Literal["solve"] = "solve"
    n: int
    count: int
    solutions: list[SolutionOut]
    singular_signs: list[list[float]]


class LcpRequest(BaseModel):
    m_matrix: list[list[float]]
    q: list[float]
    norm: NormIn = Field(default_factory=NormIn)
    enum_limit: int = 14


class LcpResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    command: Literal["lcp"] = "lcp"
    n: int
    norm: NormOut
    ave_matrix: list[list[float]]
    ave_rhs: list[float]
    is_m_matrix: bool
    is_h_matrix: bool
    is_p_matrix: bool | None
    m_matrix_value: float | None
    h_matrix_bound: float | None
    chen_xiang: float | None
    chen_upper_bound: float | None
    inf_enclosure_bound: float | None
    transform_cond_exact: float | None
    notes: list[str]


class SelftestCheck(BaseModel):
    name: str
    passed: bool
    value: float
    expected: float
    tolerance: float


class SelftestResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    command: Literal["selftest"] = "selftest"
    passed: bool
    checks: list[SelftestCheck]


class HealthResponse(BaseModel):
    status: Literal["ok"] = "ok"
    version: str
