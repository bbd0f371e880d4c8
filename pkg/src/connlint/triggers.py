"""Library profiles and classification of network operation triggers."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from connlint.source.model import CallSite, MethodModel, SourceUnit


class LibraryId(str, enum.Enum):
    HTTP_URL_CONNECTION = "HttpURLConnection"
    OKHTTP = "OkHttp"
    RETROFIT = "Retrofit"
    VOLLEY = "Volley"


class Flavor(str, enum.Enum):
    SYNCHRONOUS = "Synchronous"
    ASYNCHRONOUS = "Asynchronous"


@dataclass(frozen=True)
class LibraryProfile:
    library_id: LibraryId
    import_prefixes: frozenset[str]
    trigger_methods: frozenset[tuple[str, Flavor]]
    response_callback_names: frozenset[str]
    body_access_names: frozenset[str]
    code_access_names: frozenset[str]
    failure_handler_names: frozenset[str]

    def flavor_of(self, method_name: str) -> Flavor | None:
        for name, flavor in self.trigger_methods:
            if name == method_name:
                return flavor
        return None


_S, _A = Flavor.SYNCHRONOUS, Flavor.ASYNCHRONOUS

_PROFILES = (
    LibraryProfile(
        LibraryId.RETROFIT,
        import_prefixes=frozenset({"retrofit2."}),
        trigger_methods=frozenset({("enqueue", _A), ("execute", _S)}),
        response_callback_names=frozenset({"onResponse"}),
        body_access_names=frozenset({"body"}),
        code_access_names=frozenset({"code"}),
        failure_handler_names=frozenset({"onFailure"}),
    ),
    LibraryProfile(
        LibraryId.OKHTTP,
        import_prefixes=frozenset({"okhttp3."}),
        trigger_methods=frozenset({("enqueue", _A), ("execute", _S)}),
        response_callback_names=frozenset({"onResponse"}),
        body_access_names=frozenset({"body"}),
        code_access_names=frozenset({"code", "isSuccessful"}),
        failure_handler_names=frozenset({"onFailure"}),
    ),
    LibraryProfile(
        LibraryId.VOLLEY,
        import_prefixes=frozenset({"com.android.volley"}),
        trigger_methods=frozenset({("add", _A)}),
        # Response.Listener argument position; the payload parameter is the body
        response_callback_names=frozenset({"Listener", "onResponse"}),
        body_access_names=frozenset(),
        code_access_names=frozenset({"statusCode"}),
        failure_handler_names=frozenset({"ErrorListener", "onErrorResponse"}),
    ),
    LibraryProfile(
        LibraryId.HTTP_URL_CONNECTION,
        import_prefixes=frozenset({"java.net.HttpURLConnection", "java.net.URL"}),
        trigger_methods=frozenset({("openConnection", _S)}),
        response_callback_names=frozenset(),
        body_access_names=frozenset({"getResponseMessage", "getInputStream"}),
        code_access_names=frozenset({"getResponseCode"}),
        # errors are handled by an enclosing try/catch
        failure_handler_names=frozenset(),
    ),
)


def builtin_profiles() -> list[LibraryProfile]:
    return list(_PROFILES)


PROFILES: dict[LibraryId, LibraryProfile] = {p.library_id: p for p in _PROFILES}


@dataclass(frozen=True)
class NetworkTrigger:
    call: CallSite
    library: LibraryId
    flavor: Flavor
    enclosing_method: str
    alternates: tuple[LibraryId, ...] = ()
    method: MethodModel | None = field(default=None, compare=False, repr=False)

    @property
    def libraries(self) -> tuple[LibraryId, ...]:
        return (self.library,) + self.alternates


def _import_matches(imported: str, prefix: str) -> bool:
    if imported.startswith(prefix):
        return True
    # `import java.net.*` brings java.net.URL into scope
    return imported.endswith(".*") and prefix.startswith(imported[:-1])


def detect_library_usage(unit: SourceUnit) -> set[LibraryId]:
    found = {
        p.library_id
        for p in _PROFILES
        if any(_import_matches(i, prefix) for i in unit.imports for prefix in p.import_prefixes)
    }
    if LibraryId.HTTP_URL_CONNECTION not in found:
        for m in unit.all_methods():
            if any(s.receiver_hint and "HttpURLConnection" in s.receiver_hint for s in m.all_sites()):
                found.add(LibraryId.HTTP_URL_CONNECTION)
                break
    return found


def _is_request_queue(receiver_hint: str | None) -> bool:
    # bare `add` is the collection API; demand evidence of a Volley RequestQueue
    return receiver_hint is not None and "requestqueue" in receiver_hint.lower()


def unit_triggers(unit: SourceUnit) -> list[NetworkTrigger]:
    libraries = sorted(detect_library_usage(unit), key=lambda lib: lib.value)
    if not libraries:
        return []
    out = []
    for method in unit.all_methods():
        for site in method.calls:
            matches: list[tuple[LibraryId, Flavor]] = []
            for lib in libraries:
                flavor = PROFILES[lib].flavor_of(site.callee_name)
                if flavor is None:
                    continue
                if lib is LibraryId.VOLLEY and not _is_request_queue(site.receiver_hint):
                    continue
                matches.append((lib, flavor))
            if not matches:
                continue
            (library, flavor), rest = matches[0], matches[1:]
            out.append(NetworkTrigger(
                call=site,
                library=library,
                flavor=flavor,
                enclosing_method=method.qualified_name,
                alternates=tuple(lib for lib, _ in rest),
                method=method,
            ))
    return out


def find_network_triggers(project) -> list[NetworkTrigger]:
    """All triggers in the project, ordered by source location.

    A call matching several imported libraries (``execute`` with both
    Retrofit and OkHttp imported) yields one trigger attributed to the
    alphabetically first library, the others kept as alternates.
    """
    triggers = [t for unit in project.units for t in unit_triggers(unit)]
    return sorted(triggers, key=lambda t: t.call.location)
