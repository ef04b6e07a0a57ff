"""
Printers
Canonical JSON and plain-text renderings of results.
"""

import json
from typing import List, Sequence

import pandas as pd
from pydantic import BaseModel

from src.core.order import AdmissibilityReport, PathOrder
from src.groebner.groebner import GBResult, MembershipResult, Overlap
from src.groebner.rewrite import StandardRepresentation
from src.groebner.schemas import AdmissibilityModel, SPolynomialModel


def to_json(model: BaseModel) -> str:
    """Byte-stable JSON: model field order, two-space indent, trailing newline."""
    return json.dumps(model.model_dump(mode="json"), indent=2, ensure_ascii=False) + "\n"


def dump_json(models: Sequence[BaseModel]) -> str:
    return json.dumps([m.model_dump(mode="json") for m in models], indent=2, ensure_ascii=False) + "\n"


def representation_text(rep: StandardRepresentation) -> str:
    lines = [f"dividend: {rep.dividend.format(rep.order)}"]
    for index, (f, terms) in enumerate(zip(rep.divisors, rep.quotients)):
        lines.append(f"divisor {index}: {f.format(rep.order)}")
        for term in terms:
            d = term.describe()
            lines.append(f"  {d['coefficient']} * ({d['left'] or '.'}) f{index} ({d['right'] or '.'})")
    lines.append(f"remainder: {rep.remainder.format(rep.order)}")
    return "\n".join(lines) + "\n"


def gb_result_text(result: GBResult) -> str:
    lines = [f"status: {result.status.value} after {result.iterations} iterations"]
    if not result.completed:
        lines.append(f"pending: {result.pending}")
    lines.append("basis:")
    lines.extend(f"  {text}" for text in result.formatted_basis())
    frame = result.trace_frame()
    if not frame.empty:
        lines.append("trace:")
        lines.append(frame.to_string(index=False))
    return "\n".join(lines) + "\n"


def membership_text(result: MembershipResult, order: PathOrder) -> str:
    verdict = "member" if result.member else "not a member"
    suffix = " (heuristic: basis not certified)" if result.heuristic else ""
    return f"{verdict}{suffix}\nnormal form: {result.normal_form.format(order)}\n"


def s_polynomial_models(pairs: Sequence[tuple], order: PathOrder) -> List[SPolynomialModel]:
    return [SPolynomialModel(overlap=ov.to_model(), s_polynomial=s.format(order)) for ov, s in pairs]


def overlaps_text(found: Sequence[Overlap]) -> str:
    if not found:
        return "no overlaps\n"
    frame = pd.DataFrame([ov.to_model().model_dump() for ov in found])
    return frame.to_string(index=False) + "\n"


def admissibility_model(report: AdmissibilityReport) -> AdmissibilityModel:
    return AdmissibilityModel(**report.summary())


def admissibility_text(report: AdmissibilityReport) -> str:
    summary = report.summary()
    lines = [
        f"order: {summary['order']} on {summary['sample_size']} paths",
        "checks: " + ", ".join(f"{k}={v}" for k, v in summary['checks'].items()),
        "admissible on sample: " + ("yes" if summary['ok'] else "no"),
    ]
    frame = report.to_frame()
    if not frame.empty:
        lines.append(frame.to_string(index=False))
    return "\n".join(lines) + "\n"
