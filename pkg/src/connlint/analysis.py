"""End-to-end pipeline: discover, load, evaluate, wrap in a Report."""

from __future__ import annotations

import os

from connlint.project import discover_project, load_project
from connlint.report.model import Report
from connlint.rules.catalog import RuleConfig
from connlint.rules.engine import evaluate


def analyze(root: str | os.PathLike, module: str | None = None, config: RuleConfig | None = None) -> Report:
    config = config or RuleConfig()
    layout = discover_project(root, module_override=module, include_tests=config.include_tests)
    project = load_project(layout)
    findings = evaluate(project, config)
    return Report(
        project_root=layout.root_path.name,
        findings=tuple(findings),
        diagnostics=project.diagnostics,
    )
