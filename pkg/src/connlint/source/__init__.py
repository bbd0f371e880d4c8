"""Language-independent source model for Java and Kotlin files."""

from connlint.source.model import (
    CallbackKind,
    CallbackRef,
    CallSite,
    GuardBranch,
    Language,
    MethodModel,
    SourceLocation,
    SourceUnit,
    TryBlock,
)
from connlint.source.parser import parse_source_unit

__all__ = [
    "CallbackKind",
    "CallbackRef",
    "CallSite",
    "GuardBranch",
    "Language",
    "MethodModel",
    "SourceLocation",
    "SourceUnit",
    "TryBlock",
    "parse_source_unit",
]
