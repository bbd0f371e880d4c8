"""The Report document and its canonical JSON form."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass

from connlint import __version__
from connlint.rules.catalog import Finding, RuleId, Severity
from connlint.source.model import SourceLocation
from connlint.triggers import LibraryId

SCHEMA_VERSION = 1
JSON_REPORT_NAME = "conan-report.json"
HTML_REPORT_NAME = "conan-report.html"

_LOCATION_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["path", "line", "column", "end_line", "end_column"],
    "properties": {
        "path": {"type": "string", "pattern": "^[^/\\\\]"},
        "line": {"type": "integer", "minimum": 1},
        "column": {"type": "integer", "minimum": 1},
        "end_line": {"type": "integer", "minimum": 1},
        "end_column": {"type": "integer", "minimum": 1},
    },
}

JSON_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "additionalProperties": False,
    "required": ["schema_version", "tool_version", "project", "summary", "findings", "diagnostics"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "tool_version": {"type": "string"},
        "project": {"type": "string"},
        "summary": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["rule", "category", "count"],
                "properties": {
                    "rule": {"enum": [r.value for r in RuleId]},
                    "category": {"type": "string"},
                    "count": {"type": "integer", "minimum": 1},
                },
            },
        },
        "findings": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["rule", "category", "severity", "message", "locations"],
                "properties": {
                    "rule": {"enum": [r.value for r in RuleId]},
                    "category": {"type": "string"},
                    "severity": {"enum": [s.value for s in Severity]},
                    "message": {"type": "string"},
                    "library": {"enum": [lib.value for lib in LibraryId]},
                    "locations": {"type": "array", "minItems": 1, "items": _LOCATION_SCHEMA},
                },
            },
        },
        "diagnostics": {"type": "array", "items": {"type": "string"}},
    },
}


@dataclass(frozen=True)
class Report:
    project_root: str
    findings: tuple[Finding, ...] = ()
    diagnostics: tuple[str, ...] = ()
    tool_version: str = __version__

    @property
    def rule_summary(self) -> list[tuple[RuleId, int]]:
        counts = Counter(f.rule for f in self.findings)
        return [(rule, counts[rule]) for rule in RuleId if counts[rule]]


def _location(loc: SourceLocation) -> dict:
    return {
        "path": loc.path,
        "line": loc.line,
        "column": loc.column,
        "end_line": loc.end_line,
        "end_column": loc.end_column,
    }


def _finding(f: Finding) -> dict:
    out = {
        "rule": f.rule.value,
        "category": f.category.value,
        "severity": f.severity.value,
        "message": f.message,
    }
    if f.library is not None:
        out["library"] = f.library.value
    out["locations"] = [_location(loc) for loc in f.locations]
    return out


def to_dict(report: Report) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "tool_version": report.tool_version,
        "project": report.project_root,
        "summary": [
            {"rule": rule.value, "category": rule.category.value, "count": n}
            for rule, n in report.rule_summary
        ],
        "findings": [_finding(f) for f in report.findings],
        "diagnostics": list(report.diagnostics),
    }


def to_json(report: Report) -> bytes:
    text = json.dumps(to_dict(report), indent=2, ensure_ascii=False)
    return (text + "\n").encode("utf-8")


def from_json(data: bytes | str) -> Report:
    doc = json.loads(data)
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema_version {doc.get('schema_version')!r}")
    findings = tuple(
        Finding(
            rule=RuleId(f["rule"]),
            message=f["message"],
            locations=tuple(SourceLocation(**loc) for loc in f["locations"]),
            library=LibraryId(f["library"]) if "library" in f else None,
            severity=Severity(f["severity"]),
        )
        for f in doc["findings"]
    )
    return Report(
        project_root=doc["project"],
        findings=findings,
        diagnostics=tuple(doc["diagnostics"]),
        tool_version=doc["tool_version"],
    )
