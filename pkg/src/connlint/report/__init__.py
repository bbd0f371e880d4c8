from connlint.report.html import SnippetUnavailable, filesystem_provider, to_html
from connlint.report.model import (
    HTML_REPORT_NAME,
    JSON_REPORT_NAME,
    JSON_SCHEMA,
    SCHEMA_VERSION,
    Report,
    from_json,
    to_dict,
    to_json,
)

__all__ = [
    "HTML_REPORT_NAME", "JSON_REPORT_NAME", "JSON_SCHEMA", "SCHEMA_VERSION", "Report",
    "SnippetUnavailable", "filesystem_provider", "from_json", "to_dict", "to_html", "to_json",
]
