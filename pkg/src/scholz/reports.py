"""Machine-readable scan reports: JSON lines by default, aligned tables and TSV
for humans and pipelines."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

SCHEMA_VERSION = 1


@dataclass
class ScanReport:
    command: str
    parameters: dict
    total: int
    violations: list
    elapsed_ms: int
    schema_version: int = SCHEMA_VERSION

    def summary_dict(self) -> dict:
        return {
            "command": self.command,
            "parameters": self.parameters,
            "total": self.total,
            "violations": self.violations,
            "elapsed_ms": self.elapsed_ms,
            "schema_version": self.schema_version,
        }


def render(records: list[dict], report: ScanReport | None, mode: str) -> str:
    """Render records plus an optional summary in json/table/tsv form.

    Record lines are emitted in list order (scans pre-sort by input key), so
    the body is deterministic; elapsed_ms only ever appears in the summary.
    """
    lines: list[str] = []
    if mode == "json":
        for r in records:
            lines.append(json.dumps(r, default=str))
        if report is not None:
            lines.append(json.dumps({"summary": report.summary_dict()}, default=str))
        return "\n".join(lines)
    keys: list[str] = []
    for r in records:
        for k in r:
            if k not in keys:
                keys.append(k)
    if mode == "tsv":
        lines.append("\t".join(keys))
        for r in records:
            lines.append("\t".join(str(r.get(k, "")) for k in keys))
    elif mode == "table":
        widths = {k: max(len(k), *(len(str(r.get(k, ""))) for r in records)) if records else len(k) for k in keys}
        lines.append("  ".join(k.ljust(widths[k]) for k in keys))
        for r in records:
            lines.append("  ".join(str(r.get(k, "")).ljust(widths[k]) for k in keys))
    else:
        raise ValueError(f"unknown output mode {mode}")
    if report is not None:
        lines.append(
            f"# total={report.total} violations={len(report.violations)} "
            f"elapsed_ms={report.elapsed_ms} schema={report.schema_version}"
        )
    return "\n".join(lines)
