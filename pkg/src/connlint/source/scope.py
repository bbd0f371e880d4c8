"""Name-based call graph over a project and the call-site matcher rules build on."""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import replace
from typing import TYPE_CHECKING, Callable, Iterable, Sequence

from connlint.source.model import CallSite, MethodModel, SourceUnit

if TYPE_CHECKING:
    from connlint.project import ProjectModel

DEFAULT_DEPTH = 3


def link_callees(units: Sequence[SourceUnit]) -> list[SourceUnit]:
    """Fill ``callees_internal`` by matching invoked simple names to declared methods.

    Overloads and same-named methods in different types all match; the
    over-approximation keeps "is there a check in scope" rules conservative.
    """
    declared: dict[str, set[str]] = defaultdict(set)
    for unit in units:
        for m in unit.methods:
            declared[m.simple_name].add(m.qualified_name)

    def link(m: MethodModel) -> MethodModel:
        callees = frozenset(q for name in m.called_names for q in declared.get(name, ()))
        return replace(m, callees_internal=callees)

    linked = []
    for unit in units:
        top = link(unit.top_level) if unit.top_level is not None else None
        linked.append(replace(unit, methods=tuple(link(m) for m in unit.methods), top_level=top))
    return linked


def resolve_scope(project: "ProjectModel", method: MethodModel, depth: int = DEFAULT_DEPTH) -> frozenset[MethodModel]:
    """`method` plus project methods reachable in at most `depth` call edges."""
    if depth < 0:
        raise ValueError("depth must be >= 0")
    index = project.methods_by_name
    seen = {method}
    frontier = deque([(method, 0)])
    while frontier:
        current, hops = frontier.popleft()
        if hops == depth:
            continue
        for qname in sorted(current.callees_internal):
            for callee in index.get(qname, ()):
                if callee not in seen:
                    seen.add(callee)
                    frontier.append((callee, hops + 1))
    return frozenset(seen)


def find_calls(
    scope: Iterable[MethodModel],
    names: set[str] | frozenset[str],
    arg_filter: Callable[[tuple[str, ...]], bool] | None = None,
    include_member_access: bool = False,
) -> list[CallSite]:
    hits = []
    for method in scope:
        sites: tuple[CallSite, ...] = method.calls
        if include_member_access:
            sites = sites + method.member_accesses
        for site in sites:
            if site.callee_name in names and (arg_filter is None or arg_filter(site.arg_tokens)):
                hits.append(site)
    return sorted(hits, key=lambda s: s.location)


def tokens_include_any(*tokens: str) -> Callable[[tuple[str, ...]], bool]:
    wanted = frozenset(tokens)
    return lambda arg_tokens: any(t in wanted for t in arg_tokens)
