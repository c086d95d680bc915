"""Request and response models for the HTTP service.

All exact quantities travel as rational strings ("3/7", "-1/2"); floats
appear only in the simulation payloads.
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field


class PolyRequest(BaseModel):
    kind: Literal["bernoulli", "euler"]
    n: int = Field(ge=0)
    p: int = Field(default=1, ge=1)
    x: str = "0"


class PolyNumberRequest(BaseModel):
    kind: Literal["euler", "bernoulli"]
    n: int = Field(ge=0)
    at: Literal[0, 1] = 1


class ValueResponse(BaseModel):
    value: str


class UmbralMomentRequest(BaseModel):
    combo: str
    x: str = "0"
    n: int = Field(ge=0)


class UmbralVerifyRequest(BaseModel):
    lhs: str
    rhs: str
    x: str = "0"
    order: int = Field(default=40, ge=0)


class CountRequest(BaseModel):
    n: int = Field(ge=0)
    l: int = Field(ge=1)
    initial: int | None = None
    list_subsets: bool = False


class CountResponse(BaseModel):
    count: int
    subsets: list[list[int]] | None = None


class DenominatorRequest(BaseModel):
    n: int = Field(ge=1)


class DenominatorResponse(BaseModel):
    terms: str
    count: int


class VerifyLoopRequest(BaseModel):
    model: Literal["bm", "bessel", "bd"]
    loops: int | None = Field(default=None, ge=1, description="unit-spaced shorthand")
    sites: list[str] | None = None
    chain: list[str] | None = None
    order: int = Field(default=30, ge=0)


class VerifyIdentityRequest(BaseModel):
    model: Literal["bm", "bessel", "egf"]
    m: int | None = Field(default=None, ge=1)
    x: str = "0"
    order: int = Field(default=30, ge=0)


class VerifyResponse(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    identity: str
    m: int | None = None
    order: int
    passed: bool = Field(alias="pass")
    first_mismatch: int | None = None
    details: str


class TailRequest(BaseModel):
    model: Literal["bm", "bessel"]
    m: int = Field(ge=1)
    order: int = Field(default=10, ge=0)
    k: int = Field(default=200, ge=0)


class TailResponse(BaseModel):
    errors: list[str]
    max_abs_error: float


class PartialRequest(BaseModel):
    model: Literal["bm", "bessel"]
    m: int = Field(ge=1)
    n: int = Field(ge=0)
    x: str = "0"
    k: int = Field(default=20, ge=0)
    printed_order: bool = False


class PartialRow(BaseModel):
    k: int
    partial_sum: str
    abs_error: str


class PartialResponse(BaseModel):
    target: str
    rows: list[PartialRow]


class SimulateRequest(BaseModel):
    model: Literal["bm", "bessel", "bd"]
    level: str = "1"
    w: float = 0.5
    paths: int = Field(default=100_000, ge=1)
    dt: float = 1e-3
    seed: int = 0
    z: float = 0.5
    chain: list[str] | None = None
    start: int = 0
    target: int | None = None
    taboo: int | None = None


class SimulateResponse(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    estimate: float
    std_error: float
    target: float
    paths: int
    dt: float
    seed: int
    passed: bool = Field(alias="pass")

