"""One detector per issue category, each a pure function of the project and its triggers."""

from __future__ import annotations

from collections import defaultdict
from typing import Iterable

from connlint.manifest import (
    ACCESS_NETWORK_STATE,
    INTERNET,
    MANAGE_NETWORK_USAGE,
    has_intent_action,
    has_permission,
)
from connlint.project import ProjectModel
from connlint.rules.catalog import Finding, RuleConfig, RuleId
from connlint.source.model import CallbackKind, CallSite, GuardBranch, MethodModel, SourceLocation
from connlint.source.scope import find_calls, resolve_scope, tokens_include_any
from connlint.triggers import PROFILES, Flavor, LibraryId, NetworkTrigger

NETWORK_STATE_IMPORTS = ("android.net.ConnectivityManager", "android.net.NetworkInfo")
LEGACY_SCHEDULERS = ("FirebaseJobDispatcher", "GcmNetworkManager", "JobScheduler")


def _common_library(triggers: Iterable[NetworkTrigger]) -> LibraryId | None:
    libs = {t.library for t in triggers}
    return libs.pop() if len(libs) == 1 else None


def _import_matches(imported: str, name: str) -> bool:
    return imported == name or imported.startswith(name + ".")


# -- CNP ----------------------------------------------------------------------


def detect_cnp(project: ProjectModel, triggers: list[NetworkTrigger]) -> list[Finding]:
    findings = []
    if triggers and not has_permission(project.manifest, INTERNET):
        findings.append(Finding(
            RuleId.INP,
            f"{len(triggers)} network operation trigger(s) found but {INTERNET} is not declared",
            tuple(t.call.location for t in triggers),
            _common_library(triggers),
        ))
    if not has_permission(project.manifest, ACCESS_NETWORK_STATE):
        locations = []
        for unit in project.units:
            hit = next((loc for name, loc in unit.import_locations
                        if any(_import_matches(name, n) for n in NETWORK_STATE_IMPORTS)), None)
            if hit is not None:
                locations.append(hit)
        if locations:
            findings.append(Finding(
                RuleId.ACP,
                f"network state is queried in {len(locations)} file(s) but "
                f"{ACCESS_NETWORK_STATE} is not declared",
                tuple(locations),
            ))
    return findings


# -- CSC ----------------------------------------------------------------------

_CSC_CHECKS = (
    (RuleId.NP, RuleId.NM, frozenset({"isConnected", "onAvailable"}), None,
     "network connection check (isConnected()/onAvailable())"),
    (RuleId.TP, RuleId.TM, frozenset({"getType", "hasTransport"}), None,
     "network type check (getType()/hasTransport())"),
    (RuleId.IP, RuleId.IM, frozenset({"hasCapability"}),
     tokens_include_any("NET_CAPABILITY_INTERNET", "NET_CAPABILITY_VALIDATED"),
     "Internet availability check (hasCapability(NET_CAPABILITY_INTERNET|NET_CAPABILITY_VALIDATED))"),
)


def _group_by_method(triggers: list[NetworkTrigger]) -> list[tuple[MethodModel, list[NetworkTrigger]]]:
    groups: dict[tuple, list[NetworkTrigger]] = {}
    methods: dict[tuple, MethodModel] = {}
    for t in triggers:
        assert t.method is not None
        key = (t.method.location, t.method.qualified_name)
        groups.setdefault(key, []).append(t)
        methods[key] = t.method
    return [(methods[k], groups[k]) for k in sorted(groups)]


def detect_csc(project: ProjectModel, triggers: list[NetworkTrigger], config: RuleConfig) -> list[Finding]:
    """Project-level finding when a check is absent everywhere, else per offending method."""
    if not triggers:
        return []
    everything = project.all_methods()
    groups = _group_by_method(triggers)
    findings = []
    for project_rule, method_rule, names, arg_filter, what in _CSC_CHECKS:
        if not find_calls(everything, names, arg_filter, include_member_access=True):
            findings.append(Finding(
                project_rule,
                f"no {what} anywhere in the project; {len(triggers)} network operation trigger(s) affected",
                tuple(t.call.location for t in triggers),
                _common_library(triggers),
            ))
            continue
        for method, method_triggers in groups:
            scope = resolve_scope(project, method, config.interprocedural_depth)
            if find_calls(scope, names, arg_filter, include_member_access=True):
                continue
            findings.append(Finding(
                method_rule,
                f"{method.qualified_name} triggers a network operation without a {what}",
                tuple(t.call.location for t in method_triggers),
                _common_library(method_triggers),
            ))
    return findings


# -- NMG ----------------------------------------------------------------------


def detect_nmg(project: ProjectModel, triggers: list[NetworkTrigger]) -> list[Finding]:
    if not triggers or has_intent_action(project.manifest, MANAGE_NETWORK_USAGE):
        return []
    manifest = SourceLocation.point(project.manifest_display_path)
    return [Finding(
        RuleId.AMN,
        f"no activity declares an intent filter for {MANAGE_NETWORK_USAGE}",
        (manifest,) + tuple(t.call.location for t in triggers),
        _common_library(triggers),
    )]


# -- RH -----------------------------------------------------------------------


def _property_aliases(names: Iterable[str]) -> set[str]:
    """Kotlin exposes Java getters as properties: getInputStream -> inputStream."""
    out = set(names)
    for n in names:
        if n.startswith("get") and len(n) > 3 and n[3].isupper():
            out.add(n[3].lower() + n[4:])
    return out


def _guarded(site: CallSite, config: RuleConfig) -> bool:
    if config.strict_null_guard:
        return site.null_guard is GuardBranch.CONDITION
    return site.guarded_by_null_check


def _matches(site: CallSite, names: set[str], member: bool) -> bool:
    return site.callee_name in (_property_aliases(names) if member else names)


def _sites_by_anchor(project: ProjectModel) -> dict[SourceLocation, list[tuple[CallSite, bool]]]:
    index: dict[SourceLocation, list[tuple[CallSite, bool]]] = defaultdict(list)
    for m in project.all_methods():
        for s in m.calls:
            if s.callback_anchor is not None:
                index[s.callback_anchor].append((s, False))
        for s in m.member_accesses:
            if s.callback_anchor is not None:
                index[s.callback_anchor].append((s, True))
    return index


def _label(t: NetworkTrigger) -> str:
    return f"{t.library.value} {t.call.callee_name}()"


def detect_rh(project: ProjectModel, triggers: list[NetworkTrigger],
              config: RuleConfig | None = None) -> list[Finding]:
    config = config or RuleConfig()
    anchors = _sites_by_anchor(project)
    findings: list[Finding] = []
    for t in triggers:
        profiles = [PROFILES[lib] for lib in t.libraries]
        body_names = set().union(*(p.body_access_names for p in profiles))
        code_names = set().union(*(p.code_access_names for p in profiles))
        loc = t.call.location

        if t.flavor is Flavor.ASYNCHRONOUS:
            responses = [cb for cb in t.call.callbacks if cb.kind is CallbackKind.RESPONSE]
            if not responses:
                findings.append(Finding(RuleId.RI, f"{_label(t)} has no response callback implementation",
                                        (loc,), t.library))
            else:
                if t.library is LibraryId.VOLLEY:
                    for cb in responses:
                        if cb.payload_param and cb.payload_used and not cb.payload_null_checked:
                            findings.append(Finding(
                                RuleId.RB,
                                f"response payload '{cb.payload_param}' is used without a null check",
                                (cb.location,), t.library))
                else:
                    for cb in responses:
                        for site, member in anchors.get(cb.location, ()):
                            if site.inside_callback is CallbackKind.RESPONSE and _matches(site, body_names, member) \
                                    and not _guarded(site, config):
                                findings.append(Finding(
                                    RuleId.RB,
                                    f"response {site.callee_name} is used without a null check",
                                    (site.location,), t.library))
                scope = [pair for cb in t.call.callbacks for pair in anchors.get(cb.location, ())]
                if not any(_matches(s, code_names, m) and s.in_decision for s, m in scope):
                    findings.append(Finding(
                        RuleId.RC,
                        f"{_label(t)}: HTTP status code ({'/'.join(sorted(code_names))}) is never checked",
                        (loc,), t.library))
            wanted = CallbackKind.ERROR_LISTENER if t.library is LibraryId.VOLLEY else CallbackKind.FAILURE
            if not any(cb.kind is wanted for cb in t.call.callbacks):
                handler = "ErrorListener" if wanted is CallbackKind.ERROR_LISTENER else "onFailure()"
                findings.append(Finding(RuleId.OF, f"{_label(t)} has no {handler} implementation",
                                        (loc,), t.library))
            continue

        # synchronous triggers: the enclosing method is the response scope
        assert t.method is not None
        local = [(s, False) for s in t.method.calls] + [(s, True) for s in t.method.member_accesses]
        local = [(s, m) for s, m in local if s.inside_callback is None]
        for site, member in local:
            if _matches(site, body_names, member) and not _guarded(site, config):
                findings.append(Finding(
                    RuleId.RB,
                    f"response {site.callee_name} is used without a null check",
                    (site.location,), t.library))
        if not any(_matches(s, code_names, m) and s.in_decision for s, m in local):
            findings.append(Finding(
                RuleId.RC,
                f"{_label(t)}: HTTP status code ({'/'.join(sorted(code_names))}) is never checked",
                (loc,), t.library))
        if not t.call.inside_try_with_nonempty_catch:
            findings.append(Finding(
                RuleId.OF,
                f"{_label(t)} is not inside a try/catch with a non-empty catch block",
                (loc,), t.library))
    return findings


# -- TS -----------------------------------------------------------------------


def detect_ts(project: ProjectModel, triggers: list[NetworkTrigger]) -> list[Finding]:
    findings = [
        Finding(RuleId.SYN, f"synchronous network call {_label(t)} blocks the calling thread",
                (t.call.location,), t.library)
        for t in triggers
        if t.flavor is Flavor.SYNCHRONOUS
    ]
    for unit in project.units:
        for name, loc in unit.import_locations:
            last = name.removesuffix(".*").rsplit(".", 1)[-1]
            if last in LEGACY_SCHEDULERS:
                findings.append(Finding(RuleId.WM, f"imports legacy scheduler {last}; prefer WorkManager",
                                        (loc,)))
                break
    return findings


# -- LBS ----------------------------------------------------------------------


def detect_lbs(project: ProjectModel) -> list[Finding]:
    sites = [s for m in project.all_methods() for s in m.constructor_calls if s.callee_name == "OkHttpClient"]
    if len(sites) < 2:
        return []
    return [Finding(
        RuleId.OK,
        f"{len(sites)} OkHttpClient instances are constructed; share a single client",
        tuple(s.location for s in sites),
        LibraryId.OKHTTP,
    )]
