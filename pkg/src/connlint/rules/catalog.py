"""Rule identifiers, findings and run configuration."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from connlint.source.model import SourceLocation
from connlint.source.scope import DEFAULT_DEPTH
from connlint.triggers import LibraryId


class Category(str, enum.Enum):
    CNP = "CNP"
    CSC = "CSC"
    NMG = "NMG"
    RH = "RH"
    TS = "TS"
    LBS = "LBS"


class Level(str, enum.Enum):
    PROJECT = "Project"
    METHOD = "Method"
    CALL_SITE = "CallSite"
    FILE = "File"


class Severity(str, enum.Enum):
    WARNING = "Warning"


@dataclass(frozen=True)
class RuleInfo:
    category: Category
    level: Level
    title: str
    description: str


class RuleId(str, enum.Enum):
    # declaration order is the report order
    INP = "INP"
    ACP = "ACP"
    NP = "NP"
    NM = "NM"
    TP = "TP"
    TM = "TM"
    IP = "IP"
    IM = "IM"
    AMN = "AMN"
    RI = "RI"
    RB = "RB"
    RC = "RC"
    OF = "OF"
    SYN = "SYN"
    WM = "WM"
    OK = "OK"

    @property
    def info(self) -> RuleInfo:
        return RULES[self]

    @property
    def category(self) -> Category:
        return RULES[self].category

    @property
    def level(self) -> Level:
        return RULES[self].level

    @property
    def order(self) -> int:
        return _ORDER[self]

    @classmethod
    def parse(cls, text: str) -> "RuleId":
        try:
            return cls(text.strip().upper())
        except ValueError:
            raise ValueError(f"unknown rule id {text!r}") from None


_C, _L = Category, Level

RULES: dict[RuleId, RuleInfo] = {
    RuleId.INP: RuleInfo(_C.CNP, _L.PROJECT, "No INTERNET permission",
                         "The app triggers network operations but the manifest does not declare "
                         "android.permission.INTERNET."),
    RuleId.ACP: RuleInfo(_C.CNP, _L.PROJECT, "No ACCESS_NETWORK_STATE permission",
                         "The app queries network state through ConnectivityManager or NetworkInfo "
                         "but the manifest does not declare android.permission.ACCESS_NETWORK_STATE."),
    RuleId.NP: RuleInfo(_C.CSC, _L.PROJECT, "No network connection check in project",
                        "Network operations are triggered but isConnected()/onAvailable() is never "
                        "used anywhere in the project."),
    RuleId.NM: RuleInfo(_C.CSC, _L.METHOD, "No network connection check in method",
                        "This method triggers a network operation without checking the connection "
                        "state within its call scope."),
    RuleId.TP: RuleInfo(_C.CSC, _L.PROJECT, "No network type check in project",
                        "Network operations are triggered but getType()/hasTransport() is never "
                        "used anywhere in the project."),
    RuleId.TM: RuleInfo(_C.CSC, _L.METHOD, "No network type check in method",
                        "This method triggers a network operation without checking the network "
                        "type within its call scope."),
    RuleId.IP: RuleInfo(_C.CSC, _L.PROJECT, "No Internet availability check in project",
                        "Network operations are triggered but hasCapability(NET_CAPABILITY_INTERNET "
                        "or NET_CAPABILITY_VALIDATED) is never used anywhere in the project."),
    RuleId.IM: RuleInfo(_C.CSC, _L.METHOD, "No Internet availability check in method",
                        "This method triggers a network operation without verifying Internet "
                        "capability within its call scope."),
    RuleId.AMN: RuleInfo(_C.NMG, _L.PROJECT, "No ACTION_MANAGE_NETWORK_USAGE",
                         "No activity declares an intent filter for "
                         "android.intent.action.MANAGE_NETWORK_USAGE, so users cannot control "
                         "the app's data usage."),
    RuleId.RI: RuleInfo(_C.RH, _L.CALL_SITE, "No Response implementation",
                        "An asynchronous request is sent without a response callback."),
    RuleId.RB: RuleInfo(_C.RH, _L.CALL_SITE, "No Response body verification",
                        "The response body is used without a null validation."),
    RuleId.RC: RuleInfo(_C.RH, _L.CALL_SITE, "No Response code verification",
                        "The HTTP status code of the response is never inspected in a decision."),
    RuleId.OF: RuleInfo(_C.RH, _L.CALL_SITE, "No onFailure implementation",
                        "Request errors are not handled: no failure callback, or a synchronous "
                        "call outside a try/catch with a non-empty catch block."),
    RuleId.SYN: RuleInfo(_C.TS, _L.CALL_SITE, "Avoid synchronous calls",
                         "A synchronous network call blocks the calling thread."),
    RuleId.WM: RuleInfo(_C.TS, _L.FILE, "No WorkManager employment",
                        "A legacy job scheduler (FirebaseJobDispatcher, GcmNetworkManager, "
                        "JobScheduler) is imported; WorkManager is the recommended replacement."),
    RuleId.OK: RuleInfo(_C.LBS, _L.PROJECT, "No more than one OkHttp constructor",
                        "More than one OkHttpClient is constructed; a single shared client reuses "
                        "connection and thread pools."),
}

_ORDER = {rule: i for i, rule in enumerate(RuleId)}
ALL_RULES = frozenset(RuleId)


@dataclass(frozen=True)
class Finding:
    rule: RuleId
    message: str
    locations: tuple[SourceLocation, ...]
    library: LibraryId | None = None
    severity: Severity = Severity.WARNING

    def __post_init__(self) -> None:
        if not self.locations:
            raise ValueError("a finding needs at least one location")
        object.__setattr__(self, "locations", tuple(sorted(set(self.locations))))

    @property
    def category(self) -> Category:
        return self.rule.category

    def sort_key(self) -> tuple:
        first = self.locations[0]
        return (self.rule.order, first.path, first.line, first.column, self.message, self.locations)


@dataclass(frozen=True)
class RuleConfig:
    enabled_rules: frozenset[RuleId] = ALL_RULES
    interprocedural_depth: int = DEFAULT_DEPTH
    include_tests: bool = False
    # count only nulls compared directly in the condition, not via a local
    strict_null_guard: bool = False

    def __post_init__(self) -> None:
        unknown = set(self.enabled_rules) - ALL_RULES
        if unknown:
            raise ValueError(f"unknown rules: {sorted(unknown)}")
        if self.interprocedural_depth < 0:
            raise ValueError("interprocedural_depth must be >= 0")
