"""Pydantic request/response models: the single wire format for CLI and HTTP."""

from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, Field


class QuiverModel(BaseModel):
    n: int
    m: int
    B: list[list[int]]
    N: list[list[list[int]]]
    frozen: list[int] = Field(default_factory=list)


class ValidateRequest(BaseModel):
    quiver: QuiverModel


class ValidateResponse(BaseModel):
    valid: bool
    violations: list[str]


class AllowedRequest(BaseModel):
    quiver: QuiverModel
    vertex: int


class AllowedResponse(BaseModel):
    allowed: bool
    violations: list[str]


class MutateRequest(BaseModel):
    quiver: QuiverModel
    vertex: int
    labels: Optional[list[str]] = None  # canonical label strings; None = initial seed
    force: bool = False                 # skip the Condition C gate


class TermModel(BaseModel):
    coef: str
    even: list[int]
    odd: list[int]


class PolyModel(BaseModel):
    n: int
    m: int
    terms: list[TermModel]


class MutateResponse(BaseModel):
    quiver: QuiverModel
    vertex: int
    label: str
    label_terms: PolyModel
    labels: list[str]
    classical_label: str
    allowed: bool
    violations: list[str]


class QuiverMutateRequest(BaseModel):
    quiver: QuiverModel
    vertex: int


class QuiverMutateResponse(BaseModel):
    quiver: QuiverModel
    violations: list[str]


class OmegaRequest(BaseModel):
    quiver: QuiverModel
    check_vertex: Optional[int] = None


class OmegaTermModel(BaseModel):
    dx: list[int]
    dX: list[int]
    num: PolyModel
    den: PolyModel


class OmegaResponse(BaseModel):
    omega: str
    terms: list[OmegaTermModel]
    invariant: Optional[bool] = None


class FriezeRequest(BaseModel):
    width: int
    diagonals: Optional[int] = None
    west: int = 1
    even_seed: Optional[list[str]] = None  # rationals, e.g. "3/2"; None = symbolic
    odd_zero: bool = False                 # with even_seed: classical frieze


class FriezeEntryModel(BaseModel):
    i: int
    j: int
    value: str


class FriezeOddEntryModel(BaseModel):
    p2: int
    q2: int
    value: str


class FriezeResponse(BaseModel):
    width: int
    evens: list[FriezeEntryModel]
    odds: list[FriezeOddEntryModel]
    glide_ok: bool
    period: Optional[int]
    monodromy_ok: bool


class SequenceRequest(BaseModel):
    name: str  # somos | somos2 | fib | kron
    count: int = 15
    k: Optional[int] = None
    l: Optional[int] = None


class SequenceResponse(BaseModel):
    name: str
    a: list[str]
    b: list[str]


class ExploreRequest(BaseModel):
    quiver: QuiverModel
    depth: int


class ExploreResponse(BaseModel):
    nodes: int
    edges: list[tuple[int, int, int]]
    labels: list[str]
    classical_nodes: int
    classical_edges: list[tuple[int, int]]
    diagnostics: list[str]


class CyclicRequest(BaseModel):
    quiver: QuiverModel
    order: list[int]
    steps: int
    eval_at_ones: bool = False


class CyclicResponse(BaseModel):
    labels: list[str]
    values_a: Optional[list[str]] = None
    values_b: Optional[list[str]] = None


class ErrorResponse(BaseModel):
    error: str
    detail: str
