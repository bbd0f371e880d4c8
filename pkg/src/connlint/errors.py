"""Exception hierarchy shared by every stage of the pipeline."""

from __future__ import annotations


class ConnlintError(Exception):
    """Base class for all errors raised by connlint."""


class NoManifestFound(ConnlintError):
    """No ``AndroidManifest.xml`` exists under the selected module."""


class AmbiguousModule(ConnlintError):
    """Several directories look like app modules and no override was given."""

    def __init__(self, candidates: list[str]) -> None:
        self.candidates = candidates
        super().__init__(
            "multiple candidate app modules found, pass --module to pick one: "
            + ", ".join(candidates)
        )


class ManifestParseError(ConnlintError):
    """The manifest is not well-formed XML or has the wrong root element."""


class FatalParseError(ConnlintError):
    """A source file has no recoverable top-level structure."""


class TruthFormatError(ConnlintError):
    """A ground-truth record could not be parsed."""

    def __init__(self, line: int, reason: str) -> None:
        self.line = line
        super().__init__(f"line {line}: {reason}")
