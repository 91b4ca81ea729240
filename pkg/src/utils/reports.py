"""
Modelos JSON de los reportes que emite la CLI
"""
import json
from typing import Any, Dict, List, Optional

from pydantic import BaseModel


class SpotValue(BaseModel):
    i: int
    j: int
    value: int


class RegionModel(BaseModel):
    i_max: int
    j_max: int
    row_max: Optional[int] = None


class BettiReport(BaseModel):
    """Tabla de Betti con sus invariantes; `region` solo en tablas acotadas"""
    subject: str
    bounded: bool
    region: Optional[RegionModel] = None
    entries: List[SpotValue]
    projdim: Optional[int] = None
    reg: Optional[int] = None
    extremal: Optional[List[SpotValue]] = None

    def to_dict(self) -> Dict[str, Any]:
        data = self.model_dump()
        if self.region is None:
            data.pop("region")
        return data


class CornerStepModel(BaseModel):
    k: int
    generator: str
    i: int
    j: int
    colon: str
    quadrics: int
    variables: int
    shifted_top_degree: int
    regularity_bound: int
    running_total: int


class CornerReport(BaseModel):
    subject: str
    n: int
    value: int
    position: SpotValue
    projdim_bound: int
    reg_bound: int
    steps: List[CornerStepModel]

    def to_dict(self) -> Dict[str, Any]:
        return self.model_dump()


class CandidateValue(BaseModel):
    source: str
    value: Optional[int] = None


class ComparisonEntry(BaseModel):
    i: int
    j: int
    binomial: Optional[int] = None
    initial: Optional[int] = None


class ConjectureReportModel(BaseModel):
    graph: str
    verdict: str
    initial_method: str
    binomial_method: str
    initial_extremal: Optional[List[SpotValue]] = None
    binomial_extremal: Optional[List[SpotValue]] = None
    comparison: List[ComparisonEntry] = []
    semicontinuity_checked: bool = False
    semicontinuity_violations: List[ComparisonEntry] = []
    candidates: List[CandidateValue] = []
    blocking: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        return self.model_dump()


class GroebnerReportModel(BaseModel):
    graph: str
    elements: int
    s_pairs: int
    nonzero_pairs: int
    reducedness_violations: int
    missing_generators: List[List[int]]
    foreign_elements: List[int]
    passed: bool
    first_counterexample: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        return self.model_dump()


def dumps(data: Any) -> str:
    """JSON estable: claves en el orden del modelo, sangría fija"""
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def parse_betti_report(data: str) -> BettiReport:
    return BettiReport.model_validate_json(data)
