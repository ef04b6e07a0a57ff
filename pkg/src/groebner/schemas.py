"""
Output Schemas
Pydantic models for the JSON emitted by the command line and the
worked-examples runner. Field order is the emission order.
"""

from typing import Dict, List, Optional

from pydantic import BaseModel


class QuotientModel(BaseModel):
    coefficient: str
    left: Optional[str] = None
    right: Optional[str] = None


class StandardRepresentationModel(BaseModel):
    side: str
    order: str
    dividend: str
    divisors: List[str]
    quotients: Dict[str, List[QuotientModel]]
    remainder: str
    sweeps: int


class OverlapModel(BaseModel):
    i: int
    j: int
    p: str
    q: str
    kind: str


class SPolynomialModel(BaseModel):
    overlap: OverlapModel
    s_polynomial: str


class TraceEntryModel(BaseModel):
    iteration: int
    i: int
    j: int
    p: str
    q: str
    added: str


class GBResultModel(BaseModel):
    side: str
    order: str
    status: str
    iterations: int
    pending: int
    basis: List[str]
    trace: List[TraceEntryModel]


class CertificateModel(BaseModel):
    ok: bool
    reason: str
    uniform: bool
    pairwise_nondivisible: bool
    failing: Optional[Dict[str, str]] = None
    s_polynomial: Optional[str] = None
    remainder: Optional[str] = None


class MembershipModel(BaseModel):
    member: bool
    heuristic: bool
    normal_form: str
    representation: Optional[StandardRepresentationModel] = None


class AdmissibilityModel(BaseModel):
    order: str
    sample_size: int
    checks: Dict[str, int]
    violations: Dict[str, int]
    descending_chain: List[str]
    ok: bool
