from typing import List

from pydantic import BaseModel

from core.schemas import CodeDescriptor, VerifyReport, WeightDistributionModel


def format_parameters(parameters: dict) -> str:
    return " ".join(f"{key}={value}" for key, value in parameters.items())


def format_report_lines(report: VerifyReport) -> List[str]:
    """One 'name: PASS' line per check, detail appended when present."""
    lines: List[str] = [f"# {report.suite} ({format_parameters(report.parameters)})"]
    for check in report.checks:
        status = "PASS" if check.passed else "FAIL"
        line = f"{check.name}: {status}"
        if check.detail:
            line += f"  [{check.detail}]"
        lines.append(line)
    return lines


def format_code_lines(code: CodeDescriptor) -> List[str]:
    return [
        f"[{code.n},{code.dimension}]_{code.q} (δ={code.delta})",
        f"n = {code.n}",
        f"k = {code.dimension}",
        "generator (lowest degree first): " + " ".join(str(c) for c in code.generator),
        "defining set: " + " ".join(str(e) for e in code.defining_set),
    ]


def format_distribution_lines(dist: WeightDistributionModel) -> List[str]:
    """Nonzero A_i only."""
    lines: List[str] = [f"{dist.side} q={dist.q} δ={dist.delta} ({dist.method})"]
    for i, count in enumerate(dist.counts):
        if count != "0":
            lines.append(f"A_{i} = {count}")
    return lines


def format_document_lines(document: BaseModel) -> List[str]:
    if isinstance(document, VerifyReport):
        return format_report_lines(document)
    if isinstance(document, CodeDescriptor):
        return format_code_lines(document)
    if isinstance(document, WeightDistributionModel):
        return format_distribution_lines(document)
    return [document.model_dump_json()]
