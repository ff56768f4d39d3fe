"""
Pydantic schemas for the JSON documents read and written by the toolkit
"""

from pydantic import BaseModel, Field, field_validator
from typing import Any, Dict, List, Literal, Optional


# Configuration Schemas
class ConfigurationDocument(BaseModel):
    """Point configuration file; rationals as "p/q" strings"""
    dim: int = Field(ge=2)
    label: str = ''
    backend: Literal['exact', 'float'] = 'exact'
    points: List[List[str]]

    @field_validator('points', mode='before')
    @classmethod
    def coerce_numbers(cls, value: Any) -> Any:
        # Bare JSON numbers are accepted and read as their decimal text
        if isinstance(value, list):
            return [
                [str(x) if isinstance(x, (int, float)) and not isinstance(x, bool) else x for x in row]
                if isinstance(row, list) else row
                for row in value
            ]
        return value


# Profile Schemas
class HyperplaneEntry(BaseModel):
    """One spanned hyperplane with the indices of its incident points"""
    coeffs: List[str]
    points: List[int]


class ProfileDocument(BaseModel):
    """Secant profile report"""
    n: int
    d: int
    ordinary: int
    tau: Dict[str, int]
    identities: Dict[str, bool] = Field(default_factory=dict)
    label: Optional[str] = None
    backend: Optional[str] = None
    per_point: Optional[List[int]] = None
    hyperplanes: Optional[List[HyperplaneEntry]] = None
    skipped_subsets: Optional[List[List[int]]] = None
    ints_witness: Optional[List[int]] = None


# Bound Schemas
class BoundDocument(BaseModel):
    """A bound on e_d(n) together with the sub-results it was derived from"""
    n: int
    d: int
    kind: Literal['lower', 'upper', 'exact']
    value: int = Field(ge=0)
    method: str
    detail: str = ''
    witness: Optional[List[int]] = None
    trace: List['BoundDocument'] = Field(default_factory=list)


BoundDocument.model_rebuild()


class TableCell(BaseModel):
    n: int
    d: int
    lower: Optional[int] = None
    upper: Optional[int] = None
    text: str


class TableDocument(BaseModel):
    """Small-values table of e_d(n)"""
    policy: str
    n_min: int
    n_max: int
    d_min: int
    d_max: int
    cells: List[TableCell]


# Verification Schemas
class ClaimDocument(BaseModel):
    """Outcome of one reproduction check"""
    group: str
    name: str
    reference: str
    computed: str
    expected: str
    passed: bool
