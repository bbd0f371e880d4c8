from connlint.rules.catalog import (
    ALL_RULES,
    RULES,
    Category,
    Finding,
    Level,
    RuleConfig,
    RuleId,
    RuleInfo,
    Severity,
)
from connlint.rules.detectors import detect_cnp, detect_csc, detect_lbs, detect_nmg, detect_rh, detect_ts
from connlint.rules.engine import evaluate, merge

__all__ = [
    "ALL_RULES", "RULES", "Category", "Finding", "Level", "RuleConfig", "RuleId", "RuleInfo",
    "Severity", "detect_cnp", "detect_csc", "detect_lbs", "detect_nmg", "detect_rh", "detect_ts",
    "evaluate", "merge",
]
