"""Extract SourceUnit facts from Java and Kotlin text.

Tree-sitter provides error-tolerant concrete syntax trees for both languages;
everything below walks those trees with a single set of node-type tables so
that Java and Kotlin code with the same shape yields the same CallSites.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from pathlib import PurePosixPath
from typing import Callable, Iterator

import tree_sitter_java
import tree_sitter_kotlin
from tree_sitter import Language as _TSLanguage
from tree_sitter import Node, Parser

from connlint.errors import FatalParseError
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

_TYPE_DECLS = frozenset({
    "class_declaration", "interface_declaration", "enum_declaration",
    "record_declaration", "annotation_type_declaration", "object_declaration",
})
_METHOD_DECLS = frozenset({
    "method_declaration", "constructor_declaration", "compact_constructor_declaration",
    "function_declaration", "secondary_constructor",
})
_LAMBDAS = frozenset({"lambda_expression", "lambda_literal", "anonymous_function"})
_TRY_NODES = frozenset({"try_statement", "try_with_resources_statement", "try_expression"})
# nodes whose `condition` child makes a null comparison count as validation
_GUARD_OWNERS = frozenset({"if_statement", "ternary_expression", "if_expression", "when_entry"})
_DECISION_OWNERS = _GUARD_OWNERS | {
    "while_statement", "do_statement", "for_statement", "switch_expression", "do_while_statement",
}
_WRAPPERS = frozenset({"parenthesized_expression", "cast_expression", "as_expression"})
_SCOPE_BOUNDARY = _TYPE_DECLS | _METHOD_DECLS | {
    "class_body", "enum_class_body", "object_literal", "program", "source_file",
    "static_initializer", "anonymous_initializer",
}
_STATEMENT_STOP = _SCOPE_BOUNDARY | _LAMBDAS | {
    "block", "constructor_body", "switch_block", "switch_block_statement_group",
    "function_body", "statements",
}
_COMMENTS = frozenset({"line_comment", "block_comment", "comment", "multiline_comment"})
_EQUALITY_OPS = frozenset({"==", "!=", "===", "!=="})

CALLBACK_METHOD_NAMES = {
    "onResponse": CallbackKind.RESPONSE,
    "onFailure": CallbackKind.FAILURE,
    "onErrorResponse": CallbackKind.ERROR_LISTENER,
}
_SAM_LISTENERS = {"Listener": CallbackKind.RESPONSE, "ErrorListener": CallbackKind.ERROR_LISTENER}


@functools.cache
def _parser(language: Language) -> Parser:
    grammar = tree_sitter_java if language is Language.JAVA else tree_sitter_kotlin
    return Parser(_TSLanguage(grammar.language()))


def _text(node: Node) -> str:
    return node.text.decode("utf-8", errors="replace")


def _collapse(text: str, limit: int = 160) -> str:
    flat = " ".join(text.split())
    return flat if len(flat) <= limit else flat[: limit - 3] + "..."


def _is_null(node: Node) -> bool:
    return node.type == "null_literal" or (node.type == "identifier" and node.text == b"null")


def _named(node: Node) -> list[Node]:
    return [c for c in node.named_children if c.type not in _COMMENTS]


def _field_of(child: Node) -> str | None:
    parent = child.parent
    if parent is None:
        return None
    for i, c in enumerate(parent.children):
        if c == child:
            return parent.field_name_for_child(i)
    return None


def _binary_operator(node: Node) -> str | None:
    op = node.child_by_field_name("operator")
    if op is not None:
        return _text(op)
    for c in node.children:
        if not c.is_named:
            return _text(c)
    return None


def _strip_up(node: Node) -> Node:
    while node.parent is not None and node.parent.type in _WRAPPERS:
        node = node.parent
    return node


def _descendants(node: Node) -> Iterator[Node]:
    stack = [node]
    while stack:
        n = stack.pop()
        yield n
        stack.extend(reversed(n.children))


def _simple_type_name(node: Node) -> str:
    """`Response.Listener<String>` -> `Listener`."""
    text = _text(node)
    text = text.split("<", 1)[0].strip()
    return text.rsplit(".", 1)[-1].strip()


# --------------------------------------------------------------------------
# condition / guard / try enclosure


def _condition_owner(node: Node, owners: frozenset[str]) -> Node | None:
    """The if/when/ternary/... whose condition syntactically contains `node`."""
    n = node
    while n.parent is not None:
        p = n.parent
        if p.type == "when_subject":
            return p
        if p.type in owners or p.type in _DECISION_OWNERS:
            if _field_of(n) == "condition" and p.type in owners:
                return p
            return None
        if p.type in _STATEMENT_STOP:
            return None
        n = p
    return None


def _when_has_null_entry(subject: Node) -> bool:
    when = subject.parent
    if when is None or when.type != "when_expression":
        return False
    for entry in when.named_children:
        if entry.type != "when_entry":
            continue
        for i, c in enumerate(entry.children):
            if entry.field_name_for_child(i) == "condition" and _is_null(c):
                return True
    return False


def _null_checked_directly(node: Node) -> bool:
    """True when `node` is an operand of a null comparison inside a guard condition."""
    n = _strip_up(node)
    p = n.parent
    if p is None:
        return False
    if p.type == "when_subject":
        return _when_has_null_entry(p)
    if p.type != "binary_expression":
        return False
    op = _binary_operator(p)
    operands = _named(p)
    if op == "?:":
        return bool(operands) and operands[0] == n
    if op not in _EQUALITY_OPS:
        return False
    if not any(_is_null(o) for o in operands if o != n):
        return False
    return _condition_owner(p, _GUARD_OWNERS) is not None


def _in_decision_directly(node: Node) -> bool:
    return _condition_owner(node, _DECISION_OWNERS) is not None


def _is_member_name(ident: Node) -> bool:
    """Identifiers naming a member (`x.name`) rather than a variable."""
    p = ident.parent
    if p is None:
        return False
    if p.type == "navigation_expression":
        return _named(p)[0] != ident
    if p.type in ("field_access", "method_invocation"):
        return _field_of(ident) in ("field", "name")
    return False


def _bound_variable(node: Node) -> tuple[str, Node] | None:
    """If `node`'s value is stored into a simple local, return (name, statement)."""
    n = _strip_up(node)
    p = n.parent
    if p is None:
        return None
    if p.type == "variable_declarator" and _field_of(n) == "value":
        name = p.child_by_field_name("name")
        stmt = p.parent
        if name is not None and stmt is not None and stmt.type == "local_variable_declaration":
            return _text(name), stmt
    if p.type == "assignment_expression" and _field_of(n) == "right":
        left = p.child_by_field_name("left")
        stmt = p.parent
        if left is not None and left.type == "identifier" and stmt is not None:
            if stmt.type == "expression_statement":
                return _text(left), stmt
    if p.type == "property_declaration":
        decl = next((c for c in p.named_children if c.type == "variable_declaration"), None)
        if decl is not None and decl.named_children:
            return _text(decl.named_children[0]), p
    if p.type == "assignment" and _field_of(n) == "right":
        left = p.child_by_field_name("left")
        if left is not None and left.type == "identifier":
            return _text(left), p
    return None


def _first_use_after(stmt: Node, name: str) -> Node | None:
    sibling = stmt.next_named_sibling
    while sibling is not None:
        for d in _descendants(sibling):
            if d.type == "identifier" and d.text.decode() == name and not _is_member_name(d):
                return d
        sibling = sibling.next_named_sibling
    return None


def _via_variable(node: Node, check: Callable[[Node], bool]) -> bool:
    bound = _bound_variable(node)
    if bound is None:
        return False
    name, stmt = bound
    if stmt.parent is None or stmt.parent.type not in ("block", "constructor_body", "statements",
                                                       "switch_block_statement_group", "lambda_literal"):
        return False
    use = _first_use_after(stmt, name)
    return use is not None and check(use)


def null_guard(node: Node) -> GuardBranch | None:
    if _null_checked_directly(node):
        return GuardBranch.CONDITION
    if _via_variable(node, _null_checked_directly):
        return GuardBranch.VARIABLE
    return None


def in_decision(node: Node) -> bool:
    return _in_decision_directly(node) or _via_variable(node, _in_decision_directly)


def _catch_nonempty(try_node: Node) -> bool:
    for c in try_node.named_children:
        if c.type == "catch_clause":
            body = c.child_by_field_name("body")
        elif c.type == "catch_block":
            body = next((b for b in c.named_children if b.type == "block"), None)
        else:
            continue
        if body is not None and _named(body):
            return True
    return False


def _is_try_body(child: Node, try_node: Node) -> bool:
    if try_node.type == "try_expression":
        return child.type == "block"
    return _field_of(child) in ("body", "resources")


def enclosing_tries(node: Node) -> Iterator[Node]:
    """Try nodes whose protected body contains `node`, innermost first.

    The walk stops at method declarations, type bodies and callback
    implementations: code there runs outside the try's dynamic extent.
    """
    n = node
    while n.parent is not None:
        p = n.parent
        if p.type in _TRY_NODES and _is_try_body(n, p):
            yield p
        if p.type in _SCOPE_BOUNDARY or classify_callback(p) is not None:
            return
        n = p


def try_protected(node: Node) -> bool:
    return any(_catch_nonempty(t) for t in enclosing_tries(node))


# --------------------------------------------------------------------------
# callbacks


def _decl_name(node: Node) -> str | None:
    if node.type == "secondary_constructor":
        return "<init>"
    name = node.child_by_field_name("name")
    if name is None:
        name = next((c for c in node.named_children if c.type in ("identifier", "simple_identifier")), None)
    return _text(name) if name is not None else None


def _call_parts(node: Node) -> tuple[Node | None, str | None, list[Node]] | None:
    """(receiver, callee simple name, argument expressions) for any invocation node."""
    if node.type == "method_invocation":
        name = node.child_by_field_name("name")
        args = node.child_by_field_name("arguments")
        return (node.child_by_field_name("object"), _text(name) if name else None,
                _named(args) if args is not None else [])
    if node.type == "object_creation_expression":
        typ = node.child_by_field_name("type")
        args = node.child_by_field_name("arguments")
        return (None, _simple_type_name(typ) if typ is not None else None,
                _named(args) if args is not None else [])
    if node.type == "call_expression":
        kids = _named(node)
        if not kids:
            return None
        callee = kids[0]
        args: list[Node] = []
        for c in kids[1:]:
            if c.type == "value_arguments":
                for va in _named(c):
                    if va.type == "value_argument" and _named(va):
                        args.append(_named(va)[-1])
            elif c.type == "annotated_lambda":
                lam = next((x for x in c.named_children if x.type == "lambda_literal"), None)
                if lam is not None:
                    args.append(lam)
        if callee.type == "identifier":
            return None, _text(callee), args
        if callee.type == "navigation_expression":
            parts = _named(callee)
            if parts and parts[-1].type == "identifier":
                return parts[0], _text(parts[-1]), args
        return None, None, args
    return None


def classify_callback(node: Node) -> CallbackKind | None:
    """Is `node` the implementation of a response/failure/error callback?"""
    if node.type in _METHOD_DECLS:
        return CALLBACK_METHOD_NAMES.get(_decl_name(node) or "")
    if node.type not in _LAMBDAS:
        return None
    holder = node.parent
    if holder is None:
        return None
    if holder.type == "variable_declarator":
        decl = holder.parent
        typ = decl.child_by_field_name("type") if decl is not None else None
        return _SAM_LISTENERS.get(_simple_type_name(typ)) if typ is not None else None
    if holder.type in ("annotated_lambda", "value_argument"):
        call = holder.parent
        if call is not None and call.type == "value_arguments":
            call = call.parent
    elif holder.type == "argument_list":
        call = holder.parent
    else:
        return None
    if call is None:
        return None
    parts = _call_parts(call)
    if parts is None or not parts[1]:
        return None
    _, callee, args = parts
    if callee in _SAM_LISTENERS:
        return _SAM_LISTENERS[callee]
    # Volley request constructors take (..., Listener, ErrorListener)
    if callee.endswith("Request") and callee[:1].isupper():
        idx = next((i for i, a in enumerate(args) if a == node), None)
        if idx == len(args) - 1:
            return CallbackKind.ERROR_LISTENER
        if idx == len(args) - 2:
            return CallbackKind.RESPONSE
    return None


def _callback_params_and_body(node: Node) -> tuple[list[str], Node | None]:
    if node.type in _METHOD_DECLS:
        params = node.child_by_field_name("parameters")
        if params is None:
            params = next((c for c in node.named_children if c.type == "function_value_parameters"), None)
        names: list[str] = []
        for p in _named(params) if params is not None else []:
            if p.type in ("formal_parameter", "spread_parameter"):
                n = p.child_by_field_name("name")
                if n is not None:
                    names.append(_text(n))
            elif p.type == "parameter":
                n = next((c for c in p.named_children if c.type == "identifier"), None)
                if n is not None:
                    names.append(_text(n))
        body = node.child_by_field_name("body")
        if body is None:
            body = next((c for c in node.named_children if c.type == "function_body"), None)
        return names, body
    if node.type == "lambda_expression":
        params = node.child_by_field_name("parameters")
        names = []
        if params is not None:
            if params.type == "identifier":
                names = [_text(params)]
            else:
                for p in _named(params):
                    if p.type == "identifier":
                        names.append(_text(p))
                    else:
                        n = p.child_by_field_name("name")
                        if n is not None:
                            names.append(_text(n))
        return names, node.child_by_field_name("body")
    # Kotlin lambda literal; implicit parameter is `it`
    params = next((c for c in node.named_children if c.type == "lambda_parameters"), None)
    names = []
    if params is not None:
        for vd in params.named_children:
            ident = next((c for c in vd.named_children if c.type == "identifier"), None)
            if ident is not None:
                names.append(_text(ident))
    else:
        names = ["it"]
    return names, node


# --------------------------------------------------------------------------
# declarations


@dataclass(frozen=True)
class _Decl:
    name: str
    type_text: str | None
    init: Node | None


def _declarations(node: Node) -> list[_Decl]:
    t = node.type
    out: list[_Decl] = []
    if t in ("local_variable_declaration", "field_declaration"):
        typ = node.child_by_field_name("type")
        for d in node.named_children:
            if d.type == "variable_declarator":
                name = d.child_by_field_name("name")
                if name is not None:
                    out.append(_Decl(_text(name), _text(typ) if typ else None, d.child_by_field_name("value")))
    elif t in ("formal_parameter", "spread_parameter", "resource", "enhanced_for_statement"):
        name = node.child_by_field_name("name")
        typ = node.child_by_field_name("type")
        if name is not None:
            out.append(_Decl(_text(name), _text(typ) if typ else None, node.child_by_field_name("value")))
    elif t == "property_declaration":
        decl = next((c for c in node.named_children if c.type == "variable_declaration"), None)
        if decl is not None and decl.named_children:
            ident = decl.named_children[0]
            typ = decl.named_children[1] if len(decl.named_children) > 1 else None
            init = None
            seen_eq = False
            for c in node.children:
                if not c.is_named and c.type == "=":
                    seen_eq = True
                elif seen_eq and c.is_named:
                    init = c
                    break
            if init is None:
                delegate = next((c for c in node.named_children if c.type == "property_delegate"), None)
                if delegate is not None and delegate.named_children:
                    init = delegate.named_children[-1]
            out.append(_Decl(_text(ident), _text(typ) if typ else None, init))
    elif t in ("parameter", "class_parameter"):
        ident = next((c for c in node.named_children if c.type == "identifier"), None)
        typ = next((c for c in node.named_children
                    if c.type in ("user_type", "nullable_type", "function_type")), None)
        if ident is not None:
            out.append(_Decl(_text(ident), _text(typ) if typ else None, None))
    return out


# --------------------------------------------------------------------------
# extraction


@dataclass
class _Builder:
    qualified_name: str
    node: Node | None
    location: SourceLocation
    calls: list[CallSite] = field(default_factory=list)
    constructors: list[CallSite] = field(default_factory=list)
    members: list[CallSite] = field(default_factory=list)
    tries: dict[tuple[int, int], list] = field(default_factory=dict)
    called: set[str] = field(default_factory=set)
    locals: dict[str, _Decl] = field(default_factory=dict)

    def build(self) -> MethodModel:
        tries = tuple(
            TryBlock(location=loc, catch_nonempty=nonempty, call_locations_covered=tuple(covered))
            for loc, nonempty, covered in self.tries.values()
        )
        return MethodModel(
            qualified_name=self.qualified_name,
            location=self.location,
            calls=tuple(self.calls),
            constructor_calls=tuple(self.constructors),
            member_accesses=tuple(self.members),
            try_blocks=tries,
            called_names=frozenset(self.called),
        )

    def empty(self) -> bool:
        return not (self.calls or self.constructors or self.members or self.tries)


class _Extractor:
    def __init__(self, path: str, source: bytes, language: Language) -> None:
        self.path = path
        self.source = source
        self.language = language
        self.lines = source.split(b"\n")
        self.tree = _parser(language).parse(source)
        self.stem = PurePosixPath(path).stem or "File"
        self.fields: dict[str, _Decl] = {}
        self.builders: dict[tuple[int, int, str], _Builder] = {}
        self.order: list[tuple[int, int, str]] = []
        top_name = f"{self.stem}.<top-level>"
        self.top = _Builder(top_name, None, self._file_location())
        self.types: list[str] = []

    # locations -----------------------------------------------------------

    def _column(self, row: int, byte_col: int) -> int:
        line = self.lines[row] if row < len(self.lines) else b""
        return len(line[:byte_col].decode("utf-8", errors="replace")) + 1

    def _loc(self, start: Node, end: Node | None = None) -> SourceLocation:
        end = end or start
        sr, sc = start.start_point
        er, ec = end.end_point
        return SourceLocation(self.path, sr + 1, self._column(sr, sc), er + 1, self._column(er, ec))

    def _file_location(self) -> SourceLocation:
        last = len(self.lines) - 1
        return SourceLocation(self.path, 1, 1, last + 1, self._column(last, len(self.lines[last])))

    # walk ----------------------------------------------------------------

    def _walk(self) -> Iterator[tuple[Node, _Builder]]:
        """Yield every node with the builder that owns the code it belongs to."""
        root = self.tree.root_node
        stack: list[tuple[Node, _Builder | None, tuple[str, ...]]] = [(root, None, ())]
        while stack:
            node, owner, types = stack.pop()
            child_owner, child_types = owner, types
            if node.type in _TYPE_DECLS:
                name = _decl_name(node) or "<anonymous>"
                self.types.append(name)
                child_types = types + (name,)
                child_owner = None
            elif node.type in _METHOD_DECLS and owner is None:
                name = _decl_name(node) or "<anonymous>"
                if node.type == "constructor_declaration":
                    name = "<init>"
                prefix = ".".join(types) if types else f"{self.stem}Kt"
                key = (node.start_byte, node.end_byte, node.type)
                owner = child_owner = _Builder(f"{prefix}.{name}", node, self._loc(node))
                self.builders[key] = owner
                self.order.append(key)
            yield node, owner or self.top
            for child in reversed(node.children):
                stack.append((child, child_owner, child_types))

    def run(self) -> SourceUnit:
        root = self.tree.root_node
        nodes = list(self._walk())

        for node, owner in nodes:
            decls = _declarations(node)
            if not decls:
                continue
            target = self.fields if owner is self.top else owner.locals
            for d in decls:
                target.setdefault(d.name, d)

        imports: list[tuple[str, SourceLocation]] = []
        for node, owner in nodes:
            t = node.type
            if t in ("import_declaration", "import"):
                name = self._import_name(node)
                if name:
                    imports.append((name, self._loc(node)))
            elif t in ("method_invocation", "object_creation_expression", "call_expression"):
                self._record_call(node, owner)
            elif t in ("field_access", "navigation_expression"):
                self._record_member(node, owner)
            elif t in _TRY_NODES:
                owner.tries.setdefault((node.start_byte, node.end_byte),
                                       [self._loc(node), _catch_nonempty(node), []])

        diagnostics = self._diagnostics(root)
        methods = tuple(self.builders[k].build() for k in self.order)
        top = None if self.top.empty() else self.top.build()
        if root.has_error and self.source.strip() and not (imports or self.types or methods or top):
            raise FatalParseError(f"{self.path}: no recoverable declarations")
        return SourceUnit(
            path=self.path,
            language=self.language,
            imports=frozenset(name for name, _ in imports),
            import_locations=tuple(imports),
            types_declared=tuple(self.types),
            methods=methods,
            top_level=top,
            diagnostics=diagnostics,
        )

    def _diagnostics(self, root: Node) -> tuple[str, ...]:
        if not root.has_error:
            return ()
        lines = sorted({
            n.start_point[0] + 1 for n in _descendants(root) if n.type == "ERROR" or n.is_missing
        })
        shown = ", ".join(str(x) for x in lines[:5]) + (" ..." if len(lines) > 5 else "")
        return (f"{self.path}: syntax error recovered near line(s) {shown}",)

    def _import_name(self, node: Node) -> str | None:
        target = next((c for c in node.named_children
                       if c.type in ("scoped_identifier", "identifier", "qualified_identifier")), None)
        if target is None:
            return None
        name = "".join(_text(target).split())
        if any(c.type in ("asterisk", "*") for c in node.children):
            name += ".*"
        return name

    # symbols -------------------------------------------------------------

    def _lookup(self, name: str, owner: _Builder) -> _Decl | None:
        return owner.locals.get(name) or self.fields.get(name)

    def _receiver_hint(self, receiver: Node | None, owner: _Builder) -> str | None:
        if receiver is None:
            return None
        hint = _collapse(_text(receiver))
        if receiver.type == "identifier":
            decl = self._lookup(hint, owner)
            if decl is not None:
                if decl.type_text:
                    hint += f": {_collapse(decl.type_text)}"
                if decl.init is not None:
                    hint += f" = {_collapse(_text(decl.init))}"
        return hint

    # calls ---------------------------------------------------------------

    def _record_call(self, node: Node, owner: _Builder) -> None:
        parts = _call_parts(node)
        if parts is None or not parts[1]:
            return
        receiver, name, args = parts
        is_ctor = node.type == "object_creation_expression"
        if node.type == "call_expression":
            callee = _named(node)[0]
            is_ctor = name[:1].isupper() and (receiver is None or _is_qualified_name(receiver))
            name_node = callee if callee.type == "identifier" else _named(callee)[-1]
            if is_ctor:
                name_node = callee
        elif is_ctor:
            name_node = node.child_by_field_name("type") or node
        else:
            name_node = node.child_by_field_name("name") or node
        site = self._site(node, name_node, name, None if is_ctor else receiver, owner,
                          arg_nodes=args, with_callbacks=True)
        if is_ctor:
            owner.constructors.append(site)
        else:
            owner.calls.append(site)
            owner.called.add(name)

    def _record_member(self, node: Node, owner: _Builder) -> None:
        if node.type == "navigation_expression":
            p = node.parent
            if p is not None and p.type == "call_expression" and _named(p)[0] == node:
                return
            parts = _named(node)
            if len(parts) < 2 or parts[-1].type != "identifier":
                return
            receiver, name_node = parts[0], parts[-1]
        else:
            receiver = node.child_by_field_name("object")
            name_node = node.child_by_field_name("field")
            if name_node is None:
                return
        site = self._site(node, name_node, _text(name_node), receiver, owner, arg_nodes=[], with_callbacks=False)
        owner.members.append(site)

    def _site(self, node: Node, name_node: Node, name: str, receiver: Node | None, owner: _Builder,
              arg_nodes: list[Node], with_callbacks: bool) -> CallSite:
        loc = self._loc(name_node, node)
        guard = null_guard(node)
        cb_kind, cb_anchor = self._enclosing_callback(node)
        tokens = tuple(
            _text(leaf)
            for a in arg_nodes
            for leaf in _descendants(a)
            if leaf.is_named and leaf.child_count == 0 and leaf.type not in _COMMENTS
        )
        callbacks: tuple[CallbackRef, ...] = ()
        if with_callbacks:
            refs: list[CallbackRef] = []
            seen: set[tuple[int, int, str]] = set()
            for a in arg_nodes:
                refs.extend(self._callbacks_in(a, owner, seen))
            callbacks = tuple(refs)
        for t in enclosing_tries(node):
            entry = owner.tries.get((t.start_byte, t.end_byte))
            if entry is None:
                entry = owner.tries[(t.start_byte, t.end_byte)] = [self._loc(t), _catch_nonempty(t), []]
            entry[2].append(loc)
        return CallSite(
            callee_name=name,
            receiver_hint=self._receiver_hint(receiver, owner),
            arg_tokens=tokens,
            location=loc,
            guarded_by_null_check=guard is not None,
            null_guard=guard,
            in_decision=in_decision(node),
            inside_try_with_nonempty_catch=try_protected(node),
            inside_callback=cb_kind,
            callback_anchor=cb_anchor,
            callbacks=callbacks,
        )

    def _enclosing_callback(self, node: Node) -> tuple[CallbackKind | None, SourceLocation | None]:
        n = node.parent
        while n is not None:
            kind = classify_callback(n)
            if kind is not None:
                return kind, self._loc(n)
            if n.type in _TYPE_DECLS:
                break
            n = n.parent
        return None, None

    def _callback_ref(self, node: Node, kind: CallbackKind) -> CallbackRef:
        params, body = _callback_params_and_body(node)
        payload = params[-1] if params and kind is CallbackKind.RESPONSE else None
        used = checked = False
        if payload is not None and body is not None:
            for d in _descendants(body):
                if d.type == "identifier" and d.text.decode() == payload and not _is_member_name(d):
                    used = True
                    if null_guard(d) is not None:
                        checked = True
        return CallbackRef(kind, self._loc(node), payload, used, checked)

    def _callbacks_in(self, node: Node, owner: _Builder, seen: set[tuple[int, int, str]]) -> list[CallbackRef]:
        key = (node.start_byte, node.end_byte, node.type)
        if key in seen:
            return []
        seen.add(key)
        kind = classify_callback(node)
        if kind is not None:
            return [self._callback_ref(node, kind)]
        if node.type == "identifier":
            decl = self._lookup(_text(node), owner)
            if decl is not None and decl.init is not None:
                return self._callbacks_in(decl.init, owner, seen)
            return []
        if node.type == "this_expression" or (node.type == "this"):
            return self._this_callbacks(node)
        refs: list[CallbackRef] = []
        for child in node.named_children:
            refs.extend(self._callbacks_in(child, owner, seen))
        return refs

    def _this_callbacks(self, node: Node) -> list[CallbackRef]:
        n = node.parent
        while n is not None and n.type not in _TYPE_DECLS and n.type != "object_literal":
            n = n.parent
        if n is None:
            return []
        body = next((c for c in n.named_children if c.type in ("class_body", "enum_class_body")), None)
        if body is None:
            body = n.child_by_field_name("body")
        refs = []
        for member in body.named_children if body is not None else []:
            kind = classify_callback(member)
            if kind is not None:
                refs.append(self._callback_ref(member, kind))
        return refs


def _is_qualified_name(node: Node) -> bool:
    if node.type == "identifier":
        return True
    if node.type == "navigation_expression":
        if any(not c.is_named and c.type != "." for c in node.children):
            return False
        return all(_is_qualified_name(c) for c in _named(node))
    return False


def parse_source_unit(path: str, text: str | bytes, language: Language) -> SourceUnit:
    """Parse one file. Localized syntax errors are recovered and reported in
    ``SourceUnit.diagnostics``; FatalParseError is raised only when nothing
    structural survives."""
    if isinstance(text, str):
        source = text.encode("utf-8")
    else:
        source = text
    if source.startswith(b"\xef\xbb\xbf"):
        source = source[3:]
    return _Extractor(path, source, language).run()
