"""Request/response schemas for the HTTP service."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field

Algorithm = Literal["omp", "sp", "bp-omp", "bp-sp", "mmpc-omp", "mbbp-omp"]


class HealthResponse(BaseModel):
    status: str = "ok"
    version: str


class GenCodeRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["ensemble-e", "col-regular", "peg"]
    m: int = Field(ge=1)
    checks: int = Field(ge=1)
    row_weight: int = 4
    col_weight: int = 3
    peg_degree: int = 3
    seed: int = 0


class GenCodeResponse(BaseModel):
    alist: str
    m: int
    checks: int
    rank: int
    dimension: int
    rate: float


class MatrixInfoRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    alist: str
    expurgate: bool = False
    k_max: int = Field(8, ge=1)


class GuaranteeRow(BaseModel):
    k: int
    recovery_guaranteed: bool
    gershgorin_delta: float


class MatrixInfoResponse(BaseModel):
    m: int
    n_cols: int
    dimension: int
    rate: float
    mu: float
    achieving_weight: int
    window_ok_for_k: int | None
    guarantee_k: int | None
    table: list[GuaranteeRow]
    text: str
    csv: str


class AnalyzeRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    curve: Literal["exponent", "rate-function", "bounds"]
    rate: float = 1.0 / 16.0
    w_r: int = 4
    theta_step: float = 1e-3
    x_max: float = 0.9
    x_step: float = 0.05
    k: int = 5
    m: int = 160
    n_cols: int = 1024


class AnalyzeResponse(BaseModel):
    csv: str
    summary: dict[str, float]


class DecodeRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    alist: str
    y: list[float]
    algorithm: Algorithm
    k: int = Field(ge=1)
    expurgate: bool = False
    scaling: Literal["normalized", "pm_one"] = "normalized"
    list_size: int = 20
    bias: float = 100.0
    seed: int = 0
    signal_kind: Literal["binary", "gaussian"] = "binary"
    m_configs: int = 8
    n_bases: int = 4
    systematic_basis: bool = True
    sigma_floor: float = 1e-3
    max_iters: int = 50
    decoder: Literal["bp", "rbp"] = "bp"
    psi0: float = 0.8
    psi1: float = 0.99


class DecodeResponse(BaseModel):
    algorithm: str
    support: list[int]
    values: list[float]
    residual_norm: float
    iterations: int
    converged: bool


class SummaryRowModel(BaseModel):
    algorithm: str
    matrix_type: str
    signal_kind: str
    K: int
    trials: int
    failures: int
    error_rate: float
    mean_runtime_ms: float
    seed: int


class SimulateResponse(BaseModel):
    rows: list[SummaryRowModel]
    csv: str
    cutoff_at_1pct: int


class PlotRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    csv: str
    logy: bool = True


class PlotResponse(BaseModel):
    svg: str
