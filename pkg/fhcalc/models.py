from __future__ import annotations

from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field

DimensionTable = Dict[int, int]
RenderedMatrix = List[List[str]]


class ChainMapReport(BaseModel):
    commutes: bool
    checked_degrees: List[int] = Field(default_factory=list)
    first_violation: Optional[int] = None


class EckmannHiltonReport(BaseModel):
    size: int
    unit: int
    operations_equal: bool
    commutative: bool
    counterexample: Optional[List[int]] = Field(
        default=None, description="(a, b) with a*b != a o b or a*b != b*a"
    )

    @property
    def passed(self) -> bool:
        return self.operations_equal and self.commutative


class EckmannHiltonScanReport(BaseModel):
    max_size: int
    monoids_per_size: Dict[int, int]
    interchange_pairs_per_size: Dict[int, int]
    noncommutative_pairs: int
    failures: List[EckmannHiltonReport] = Field(default_factory=list)


class ConnesReport(BaseModel):
    algebra: str
    maxdeg: int
    b_squared_zero: bool
    B_squared_zero: bool
    anticommutes: bool = Field(..., description="bB + Bb = 0 on the stored range")
    checked_degrees: List[int] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.b_squared_zero and self.B_squared_zero and self.anticommutes


class CircleActionReport(BaseModel):
    weight: int
    holds: bool
    sign: Optional[int] = Field(
        default=None, description="+1 or -1: which sign of [B(x^w)] = sign * w [x^(w-1) dx] matched"
    )
    preimage_support: Optional[int] = Field(
        default=None, description="number of nonzero coordinates in a b_2 preimage of the difference"
    )


class HkrReport(BaseModel):
    variables: int
    weight: int
    hochschild: DimensionTable
    kaehler: DimensionTable
    maps_verified: Dict[int, bool]
    passed: bool


class MoritaReport(BaseModel):
    algebra: str
    size: int
    maxdeg: int
    hochschild: DimensionTable
    matrix_hochschild: DimensionTable
    passed: bool


class ExcisionReport(BaseModel):
    algebra: str
    maxdeg: int
    convention: str
    hochschild: DimensionTable
    tor: DimensionTable
    agree: Dict[int, bool]
    passed: bool


class HornReport(BaseModel):
    n: int
    k: int
    horns: int
    fillable: int
    max_fillers: Optional[int] = None
    min_fillers: Optional[int] = None

    @property
    def all_fillable(self) -> bool:
        return self.fillable == self.horns

    @property
    def unique_fillers(self) -> bool:
        return self.horns == 0 or (self.min_fillers == 1 and self.max_fillers == 1)


class TorusReport(BaseModel):
    algebra: str
    maxdeg: int
    torus: DimensionTable
    hochschild: DimensionTable = Field(
        default_factory=dict, description="shown for context; not expected to be equal"
    )
    chain_dims: DimensionTable = Field(default_factory=dict)
    coequalizer: int = Field(..., description="dim A^{⊗T_0} / im(d_0 - d_1), the direct degree-0 value")

    @property
    def passed(self) -> bool:
        return self.torus.get(0) == self.coequalizer


class DualityReport(BaseModel):
    dimension: int
    dual_dimension: int
    passed: bool
    left_residual: Optional[RenderedMatrix] = None
    right_residual: Optional[RenderedMatrix] = None


class DualizabilityVerdict(BaseModel):
    dualizable: bool
    dimension: Optional[int] = None
    coevaluation: Optional[RenderedMatrix] = None
    evaluation: Optional[RenderedMatrix] = None
    check: Optional[DualityReport] = None
    note: str = ""


class CommandReport(BaseModel):
    command: List[str]
    inputs: Dict[str, str] = Field(
        default_factory=dict, description="sha256 of each input file, or builtin:<name>"
    )
    status: Literal["pass", "fail"]
    result: Dict[str, Any] = Field(default_factory=dict)
