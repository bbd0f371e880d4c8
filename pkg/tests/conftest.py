from __future__ import annotations

import json
from pathlib import Path

import pytest

from connlint.analysis import analyze
from connlint.report.model import Report

FIXTURES = Path(__file__).parent / "fixtures"
RULE_FIXTURES = FIXTURES / "rules"
SRC = "app/src/main/java/com/example/app/"


def expected_findings(project: Path) -> list[tuple[str, list[tuple[str, int]]]]:
    doc = json.loads((project / "expected.json").read_text())
    return [(f["rule"], [tuple(loc) for loc in f["locations"]]) for f in doc["findings"]]


def observed_findings(report: Report) -> list[tuple[str, list[tuple[str, int]]]]:
    return [(f.rule.value, [(loc.path, loc.line) for loc in f.locations]) for f in report.findings]


def write_project(root: Path, files: dict[str, str], manifest: str | None = None) -> Path:
    """Lay out an app module under `root`; keys are paths relative to the package dir
    unless they start with ``app/``."""
    if manifest is None:
        manifest = (RULE_FIXTURES / "clean" / "app/src/main/AndroidManifest.xml").read_text()
    (root / "app/src/main").mkdir(parents=True, exist_ok=True)
    (root / "app/src/main/AndroidManifest.xml").write_text(manifest)
    for rel, text in files.items():
        path = root / (rel if rel.startswith("app/") else SRC + rel)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    return root


@pytest.fixture
def fixture_report():
    cache: dict[Path, Report] = {}

    def run(path: Path) -> Report:
        if path not in cache:
            cache[path] = analyze(path)
        return cache[path]

    return run


# -- acceptance summary -------------------------------------------------------

_OUTCOMES: dict[str, list[bool]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    label = marker.args[0]
    if report.when == "call" or (report.when == "setup" and not report.passed):
        _OUTCOMES.setdefault(label, []).append(report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _OUTCOMES:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_OUTCOMES, key=lambda s: int(s.split(".", 1)[0])):
        results = _OUTCOMES[label]
        verdict = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"{verdict}  {label}  ({sum(results)}/{len(results)} checks)")
