"""Score emitted findings against hand-labelled ground truth."""

from __future__ import annotations

import enum
import json
from collections import defaultdict
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from connlint.errors import TruthFormatError
from connlint.rules.catalog import Finding, RuleId


class Verdict(str, enum.Enum):
    TP = "TP"
    FP = "FP"


@dataclass(frozen=True)
class LabeledFinding:
    rule: RuleId
    path: str
    line: int
    # None marks a presence-only label, counted as expected (TP) when matched
    verdict: Verdict | None = None

    @property
    def key(self) -> tuple[RuleId, str, int]:
        return (self.rule, self.path, self.line)


@dataclass(frozen=True)
class RuleScore:
    rule: RuleId
    emitted: int
    true_positives: int
    false_positives: int
    expected: int
    missed: int

    @property
    def precision(self) -> float | None:
        if self.emitted == 0:
            return None
        return self.true_positives / (self.true_positives + self.false_positives)

    @property
    def recall(self) -> float | None:
        if self.expected == 0:
            return None
        return (self.expected - self.missed) / self.expected


@dataclass(frozen=True)
class PrecisionReport:
    rules: dict[RuleId, RuleScore]

    @property
    def emitted(self) -> int:
        return sum(s.emitted for s in self.rules.values())

    @property
    def true_positives(self) -> int:
        return sum(s.true_positives for s in self.rules.values())

    @property
    def false_positives(self) -> int:
        return sum(s.false_positives for s in self.rules.values())

    @property
    def precision(self) -> float | None:
        if self.emitted == 0:
            return None
        return self.true_positives / self.emitted

    def precision_of(self, rule: RuleId) -> float | None:
        score = self.rules.get(rule)
        return score.precision if score else None

    def as_dict(self) -> dict:
        return {
            "rules": {
                r.value: {
                    "emitted": s.emitted,
                    "tp": s.true_positives,
                    "fp": s.false_positives,
                    "precision": s.precision,
                    "recall": s.recall,
                }
                for r, s in sorted(self.rules.items(), key=lambda kv: kv[0].order)
            },
            "totals": {
                "emitted": self.emitted,
                "tp": self.true_positives,
                "fp": self.false_positives,
                "precision": self.precision,
            },
        }


def parse_record(record: object, line: int) -> LabeledFinding:
    if not isinstance(record, dict):
        raise TruthFormatError(line, "record is not a JSON object")
    try:
        rule = RuleId(record["rule"])
    except KeyError:
        raise TruthFormatError(line, "missing 'rule'") from None
    except ValueError:
        raise TruthFormatError(line, f"unknown rule id {record['rule']!r}") from None
    path, lineno = record.get("path"), record.get("line")
    if not isinstance(path, str) or not path:
        raise TruthFormatError(line, "'path' must be a non-empty string")
    if not isinstance(lineno, int) or isinstance(lineno, bool) or lineno < 1:
        raise TruthFormatError(line, "'line' must be a positive integer")
    verdict = record.get("verdict")
    if verdict is not None:
        try:
            verdict = Verdict(verdict)
        except ValueError:
            raise TruthFormatError(line, f"verdict must be TP or FP, got {verdict!r}") from None
    return LabeledFinding(rule, path, lineno, verdict)


def load_ground_truth(path: str | Path) -> list[LabeledFinding]:
    labels = []
    with open(path, encoding="utf-8") as fh:
        for n, raw in enumerate(fh, start=1):
            if not raw.strip():
                continue
            try:
                record = json.loads(raw)
            except json.JSONDecodeError as exc:
                raise TruthFormatError(n, f"invalid JSON: {exc.msg}") from None
            labels.append(parse_record(record, n))
    return labels


def score(findings: Iterable[Finding], truth: Iterable[LabeledFinding]) -> PrecisionReport:
    """Per-rule precision with line-level matching.

    A finding matches a label when rule, path and line agree for any of its
    locations. A matched FP label, or no label at all, counts the finding
    as a false positive.
    """
    labels: dict[tuple, LabeledFinding] = {}
    for label in truth:
        # a TP verdict wins over a conflicting FP on the same key
        prior = labels.get(label.key)
        if prior is None or prior.verdict is Verdict.FP:
            labels[label.key] = label
    counts: dict[RuleId, list[int]] = defaultdict(lambda: [0, 0, 0])
    hit: set[tuple] = set()
    for f in findings:
        keys = [(f.rule, loc.path, loc.line) for loc in f.locations]
        matched = [labels[k] for k in keys if k in labels]
        cell = counts[f.rule]
        cell[0] += 1
        hit.update(k for k in keys if k in labels)
        if any(m.verdict is not Verdict.FP for m in matched):
            cell[1] += 1
        else:
            cell[2] += 1
    expected: dict[RuleId, int] = defaultdict(int)
    missed: dict[RuleId, int] = defaultdict(int)
    for key, label in labels.items():
        if label.verdict is Verdict.FP:
            continue
        expected[label.rule] += 1
        if key not in hit:
            missed[label.rule] += 1
    rules = {
        rule: RuleScore(
            rule=rule,
            emitted=counts[rule][0] if rule in counts else 0,
            true_positives=counts[rule][1] if rule in counts else 0,
            false_positives=counts[rule][2] if rule in counts else 0,
            expected=expected[rule],
            missed=missed[rule],
        )
        for rule in RuleId
        if rule in counts or expected[rule]
    }
    return PrecisionReport(rules)
