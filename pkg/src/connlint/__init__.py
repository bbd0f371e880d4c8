"""Static detection of Internet-connectivity issues in Android Java/Kotlin sources."""

__version__ = "0.1.0"

from connlint.analysis import analyze  # noqa: E402
from connlint.rules import Finding, RuleConfig, RuleId, evaluate  # noqa: E402

__all__ = ["Finding", "RuleConfig", "RuleId", "__version__", "analyze", "evaluate"]
