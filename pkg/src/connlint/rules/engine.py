"""Run the category detectors over a project and merge their findings."""

from __future__ import annotations

from connlint.project import ProjectModel
from connlint.rules.catalog import Finding, RuleConfig
from connlint.rules.detectors import detect_cnp, detect_csc, detect_lbs, detect_nmg, detect_rh, detect_ts
from connlint.triggers import find_network_triggers


def merge(findings: list[Finding]) -> list[Finding]:
    """Sort in report order and collapse findings sharing a rule and location set."""
    seen: set[tuple] = set()
    out = []
    for f in sorted(findings, key=Finding.sort_key):
        key = (f.rule, f.locations)
        if key not in seen:
            seen.add(key)
            out.append(f)
    return out


def evaluate(project: ProjectModel, config: RuleConfig | None = None) -> list[Finding]:
    config = config or RuleConfig()
    triggers = find_network_triggers(project)
    found = [
        *detect_cnp(project, triggers),
        *detect_csc(project, triggers, config),
        *detect_nmg(project, triggers),
        *detect_rh(project, triggers, config),
        *detect_ts(project, triggers),
        *detect_lbs(project),
    ]
    return merge([f for f in found if f.rule in config.enabled_rules])
