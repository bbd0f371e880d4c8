"""Self-contained HTML rendering of a Report, one section per rule."""

from __future__ import annotations

import html
from pathlib import Path
from typing import Callable

from connlint.report.model import Report
from connlint.rules.catalog import Finding, RuleId
from connlint.source.model import SourceLocation

SNIPPET_CONTEXT = 3

SourceProvider = Callable[[str], str]


class SnippetUnavailable(Exception):
    """The source text for a location cannot be obtained."""


def filesystem_provider(root: str | Path) -> SourceProvider:
    base = Path(root)

    def read(path: str) -> str:
        try:
            return (base / path).read_text(encoding="utf-8-sig", errors="replace")
        except OSError as exc:
            raise SnippetUnavailable(path) from exc

    return read


_STYLE = """
body{font-family:sans-serif;margin:2em;color:#222}
h1{font-size:1.5em}h2{font-size:1.2em;border-bottom:1px solid #ccc;padding-bottom:.2em}
.category{display:inline-block;background:#e8eef8;border-radius:3px;padding:0 .4em;font-size:.85em}
.finding{margin:1em 0;padding:.5em 1em;border-left:4px solid #d08700;background:#fafafa}
.loc{font-family:monospace;color:#555}
pre.snippet{background:#fff;border:1px solid #ddd;padding:.4em;overflow-x:auto;margin:.3em 0}
pre.snippet span{display:block}
pre.snippet .hit{background:#ffe8a8;font-weight:bold}
table.summary td,table.summary th{padding:.2em .8em;text-align:left}
""".strip()


def _snippet(loc: SourceLocation, provider: SourceProvider, cache: dict[str, list[str] | None]) -> str | None:
    if loc.path not in cache:
        try:
            cache[loc.path] = provider(loc.path).splitlines()
        except (SnippetUnavailable, OSError):
            cache[loc.path] = None
    lines = cache[loc.path]
    if lines is None or loc.line > len(lines):
        return None
    first = max(1, loc.line - SNIPPET_CONTEXT)
    last = min(len(lines), loc.line + SNIPPET_CONTEXT)
    width = len(str(last))
    rows = []
    for n in range(first, last + 1):
        cls = ' class="hit"' if n == loc.line else ""
        rows.append(f'<span{cls} data-line="{n}">{n:>{width}}  {html.escape(lines[n - 1])}</span>')
    return '<pre class="snippet">' + "".join(rows) + "</pre>"


def _finding_block(f: Finding, provider: SourceProvider | None, cache: dict) -> list[str]:
    lib = f' <span class="category">{html.escape(f.library.value)}</span>' if f.library else ""
    out = [
        f'<div class="finding" data-rule="{f.rule.value}">',
        f"<p><strong>{html.escape(f.severity.value)}</strong>: {html.escape(f.message)}{lib}</p>",
    ]
    for loc in f.locations:
        out.append(f'<p class="loc">{html.escape(loc.path)}:{loc.line}:{loc.column}</p>')
        snippet = _snippet(loc, provider, cache) if provider is not None else None
        if snippet is not None:
            out.append(snippet)
    out.append("</div>")
    return out


def to_html(report: Report, source_provider: SourceProvider | None = None) -> bytes:
    """Render the report; unavailable sources degrade to location-only entries."""
    title = f"Connectivity issues in {html.escape(report.project_root)}"
    parts = [
        "<!DOCTYPE html>",
        '<html lang="en"><head><meta charset="utf-8">',
        f"<title>{title}</title><style>{_STYLE}</style></head><body>",
        f"<h1>{title}</h1>",
        f"<p>{len(report.findings)} connectivity issue(s) found. Tool version {html.escape(report.tool_version)}.</p>",
    ]
    summary = report.rule_summary
    if summary:
        parts.append('<table class="summary"><tr><th>Rule</th><th>Category</th><th>Issues</th></tr>')
        for rule, n in summary:
            parts.append(f"<tr><td>{rule.value}</td><td>{rule.category.value}</td><td>{n}</td></tr>")
        parts.append("</table>")
    cache: dict[str, list[str] | None] = {}
    for rule in RuleId:
        group = [f for f in report.findings if f.rule is rule]
        if not group:
            continue
        info = rule.info
        parts.append(f'<section id="rule-{rule.value}">')
        parts.append(f"<h2>{rule.value}: {html.escape(info.title)} "
                     f'<span class="category">Connectivity issue / {rule.category.value}</span></h2>')
        parts.append(f"<p>{html.escape(info.description)}</p>")
        for f in group:
            parts.extend(_finding_block(f, source_provider, cache))
        parts.append("</section>")
    if report.diagnostics:
        parts.append("<h2>Diagnostics</h2><ul>")
        parts.extend(f"<li>{html.escape(d)}</li>" for d in report.diagnostics)
        parts.append("</ul>")
    parts.append("</body></html>")
    return ("\n".join(parts) + "\n").encode("utf-8")
