"""Locate an Android app module on disk and assemble its ProjectModel."""

from __future__ import annotations

import functools
import logging
import os
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path

from connlint.errors import AmbiguousModule, FatalParseError, NoManifestFound
from connlint.manifest import ManifestModel, parse_manifest
from connlint.source.model import Language, MethodModel, SourceUnit
from connlint.source.parser import parse_source_unit
from connlint.source.scope import link_callees

log = logging.getLogger(__name__)

MANIFEST_NAME = "AndroidManifest.xml"
DEFAULT_MODULE = "app"
SOURCE_SUFFIXES = (".java", ".kt")
_MAIN_ROOTS = ("src/main/java", "src/main/kotlin")
_TEST_ROOTS = ("src/test/java", "src/test/kotlin", "src/androidTest/java", "src/androidTest/kotlin")
_TEST_DIRS = ("test", "androidTest")
_EXCLUDED_DIRS = frozenset({"build", ".gradle", ".git", ".idea", "generated"})


@dataclass(frozen=True)
class ProjectLayout:
    root_path: Path
    module_name: str
    manifest_path: Path
    source_paths: tuple[Path, ...] = ()

    def relative(self, path: Path) -> str:
        return path.relative_to(self.root_path).as_posix()


@dataclass(frozen=True)
class ProjectModel:
    layout: ProjectLayout
    manifest: ManifestModel
    units: tuple[SourceUnit, ...] = ()
    diagnostics: tuple[str, ...] = ()
    manifest_display_path: str = field(default="AndroidManifest.xml")

    @functools.cached_property
    def methods_by_name(self) -> dict[str, list[MethodModel]]:
        index: dict[str, list[MethodModel]] = defaultdict(list)
        for unit in self.units:
            for m in unit.all_methods():
                index[m.qualified_name].append(m)
        return dict(index)

    def all_methods(self) -> list[MethodModel]:
        return [m for unit in self.units for m in unit.all_methods()]


def _walk_files(top: Path, include_tests: bool = True):
    """Regular files under `top`; never follows symlinks, skips build outputs."""
    for dirpath, dirnames, filenames in os.walk(top, followlinks=False):
        here = Path(dirpath)
        keep = []
        for d in sorted(dirnames):
            if d in _EXCLUDED_DIRS or d.startswith("."):
                continue
            if (here / d).is_symlink():
                continue
            if not include_tests and d in _TEST_DIRS and here.name == "src":
                continue
            keep.append(d)
        dirnames[:] = keep
        for name in sorted(filenames):
            path = here / name
            if not path.is_symlink():
                yield path


def _module_of(manifest: Path, root: Path) -> Path:
    # <module>/src/<variant>/AndroidManifest.xml -> <module>
    parent = manifest.parent
    if parent.parent.name == "src" and parent.parent.parent != parent.parent:
        candidate = parent.parent.parent
        if candidate == root or root in candidate.parents:
            return candidate
    return parent


def _display(module: Path, root: Path) -> str:
    rel = module.relative_to(root).as_posix()
    return rel if rel != "" else "."


def _find_manifest(module: Path) -> Path | None:
    for candidate in (module / "src" / "main" / MANIFEST_NAME, module / MANIFEST_NAME):
        if candidate.is_file() and not candidate.is_symlink():
            return candidate
    found = sorted(p for p in _walk_files(module, include_tests=False) if p.name == MANIFEST_NAME)
    return found[0] if found else None


def discover_project(root: str | os.PathLike, module_override: str | None = None,
                     include_tests: bool = False) -> ProjectLayout:
    """Find the app module under `root` and enumerate its Java/Kotlin sources.

    Module choice: `module_override`, else ``app`` when present, else the
    single directory holding an Android manifest. Only the module's main
    source roots are scanned (plus test roots with `include_tests`), so
    build outputs and third-party code elsewhere never reach the rules.
    """
    root = Path(root).resolve()
    if not root.is_dir():
        raise NotADirectoryError(str(root))

    if module_override is not None:
        module = (root / module_override).resolve()
        if not (module == root or root in module.parents) or not module.is_dir():
            raise NoManifestFound(f"module {module_override!r} not found under {root}")
    elif (root / DEFAULT_MODULE).is_dir():
        module = root / DEFAULT_MODULE
    else:
        modules = sorted({_module_of(p, root) for p in _walk_files(root, include_tests=False)
                          if p.name == MANIFEST_NAME})
        if not modules:
            raise NoManifestFound(f"no {MANIFEST_NAME} under {root}")
        if len(modules) > 1:
            raise AmbiguousModule([_display(m, root) for m in modules])
        module = modules[0]

    manifest = _find_manifest(module)
    if manifest is None:
        raise NoManifestFound(f"no {MANIFEST_NAME} under module {_display(module, root)}")

    roots = [module / r for r in _MAIN_ROOTS]
    if include_tests:
        roots += [module / r for r in _TEST_ROOTS]
    roots = [r for r in roots if r.is_dir() and not r.is_symlink()]
    if not roots:
        roots = [manifest.parent]

    sources: set[Path] = set()
    for source_root in roots:
        for path in _walk_files(source_root, include_tests=include_tests):
            if path.suffix in SOURCE_SUFFIXES:
                sources.add(path)
    ordered = sorted(sources, key=lambda p: p.relative_to(root).as_posix().encode())
    return ProjectLayout(
        root_path=root,
        module_name=_display(module, root),
        manifest_path=manifest,
        source_paths=tuple(ordered),
    )


def _read_text(path: Path, diagnostics: list[str], rel: str) -> str | None:
    try:
        raw = path.read_bytes()
    except OSError as exc:
        diagnostics.append(f"{rel}: unreadable ({exc.strerror or exc})")
        return None
    try:
        return raw.decode("utf-8-sig")
    except UnicodeDecodeError:
        diagnostics.append(f"{rel}: not valid UTF-8, undecodable bytes replaced")
        return raw.decode("utf-8-sig", errors="replace")


def load_project(layout: ProjectLayout) -> ProjectModel:
    """Parse the manifest (fatal on error) and every source file (never fatal)."""
    manifest = parse_manifest(layout.manifest_path.read_bytes())
    diagnostics: list[str] = []
    units: list[SourceUnit] = []
    for path in sorted(layout.source_paths, key=lambda p: layout.relative(p).encode()):
        rel = layout.relative(path)
        text = _read_text(path, diagnostics, rel)
        if text is None:
            continue
        language = Language.from_suffix(path.suffix)
        if language is None:
            continue
        try:
            unit = parse_source_unit(rel, text, language)
        except FatalParseError as exc:
            diagnostics.append(f"{rel}: excluded, {exc}")
            continue
        diagnostics.extend(unit.diagnostics)
        units.append(unit)
    for d in diagnostics:
        log.debug(d)
    return ProjectModel(
        layout=layout,
        manifest=manifest,
        units=tuple(link_callees(units)),
        diagnostics=tuple(diagnostics),
        manifest_display_path=layout.relative(layout.manifest_path),
    )
