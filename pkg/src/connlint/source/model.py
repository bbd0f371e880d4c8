"""Normalized, language-independent facts extracted from one source file."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field


class Language(str, enum.Enum):
    JAVA = "Java"
    KOTLIN = "Kotlin"

    @classmethod
    def from_suffix(cls, suffix: str) -> "Language | None":
        return {".java": cls.JAVA, ".kt": cls.KOTLIN}.get(suffix)


class CallbackKind(str, enum.Enum):
    RESPONSE = "Response"
    FAILURE = "Failure"
    ERROR_LISTENER = "ErrorListener"


class GuardBranch(str, enum.Enum):
    """How a null validation was recognized.

    ``CONDITION``: the expression itself is null-compared inside an
    if/when/ternary condition (or is the left side of an elvis).
    ``VARIABLE``: the expression is stored in a local whose first later use
    is such a null comparison.
    """

    CONDITION = "condition"
    VARIABLE = "variable"


@dataclass(frozen=True, order=True)
class SourceLocation:
    path: str
    line: int
    column: int
    end_line: int
    end_column: int

    def __post_init__(self) -> None:
        if (self.line, self.column) > (self.end_line, self.end_column):
            raise ValueError(f"location start after end: {self}")

    @classmethod
    def point(cls, path: str, line: int = 1, column: int = 1) -> "SourceLocation":
        return cls(path, line, column, line, column)


@dataclass(frozen=True)
class CallbackRef:
    """A callback implementation handed to a call (lambda, anonymous object or method).

    ``payload_*`` describe the last parameter of a response callback, which
    carries the response (Volley delivers the parsed body there).
    """

    kind: CallbackKind
    location: SourceLocation
    payload_param: str | None = None
    payload_used: bool = False
    payload_null_checked: bool = False


@dataclass(frozen=True)
class CallSite:
    callee_name: str
    receiver_hint: str | None
    arg_tokens: tuple[str, ...]
    location: SourceLocation
    guarded_by_null_check: bool = False
    null_guard: GuardBranch | None = None
    in_decision: bool = False
    inside_try_with_nonempty_catch: bool = False
    inside_callback: CallbackKind | None = None
    callback_anchor: SourceLocation | None = None
    callbacks: tuple[CallbackRef, ...] = ()


@dataclass(frozen=True)
class TryBlock:
    location: SourceLocation
    catch_nonempty: bool
    call_locations_covered: tuple[SourceLocation, ...] = ()


@dataclass(frozen=True)
class MethodModel:
    """A declared method, or the synthetic holder of a file's initializer code.

    ``member_accesses`` holds property/field reads (``a.b`` not followed by a
    call); they share the CallSite shape so rules can match Kotlin property
    syntax such as ``response.code``.
    """

    qualified_name: str
    location: SourceLocation
    calls: tuple[CallSite, ...] = ()
    constructor_calls: tuple[CallSite, ...] = ()
    member_accesses: tuple[CallSite, ...] = ()
    try_blocks: tuple[TryBlock, ...] = ()
    called_names: frozenset[str] = field(default_factory=frozenset)
    callees_internal: frozenset[str] = field(default_factory=frozenset)

    def __hash__(self) -> int:
        return hash((self.qualified_name, self.location))

    @property
    def simple_name(self) -> str:
        return self.qualified_name.rsplit(".", 1)[-1]

    def all_sites(self) -> tuple[CallSite, ...]:
        return self.calls + self.constructor_calls + self.member_accesses


@dataclass(frozen=True)
class SourceUnit:
    path: str
    language: Language
    imports: frozenset[str] = field(default_factory=frozenset)
    import_locations: tuple[tuple[str, SourceLocation], ...] = ()
    types_declared: tuple[str, ...] = ()
    methods: tuple[MethodModel, ...] = ()
    top_level: MethodModel | None = None
    diagnostics: tuple[str, ...] = ()

    @property
    def top_level_calls(self) -> tuple[CallSite, ...]:
        return self.top_level.calls if self.top_level else ()

    def all_methods(self) -> tuple[MethodModel, ...]:
        """Declared methods followed by the initializer holder, if any."""
        if self.top_level is None:
            return self.methods
        return self.methods + (self.top_level,)
