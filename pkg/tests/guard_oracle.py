"""Random Java method bodies and a line-based oracle for guard and try flags.

The generator emits one statement per line and only brace layouts of the
form ``... {`` / ``}`` / ``} catch (...) {``, so the oracle can recover
block structure by counting braces, without any parser.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field

MAX_STATEMENTS = 30

_CALL = re.compile(r"\b([A-Za-z_]\w*)\s*\(")
_KEYWORDS = {"if", "while", "for", "switch", "catch", "synchronized", "return"}
_BIND = re.compile(r"^Object (v\d+) = r\.body\(\);$")
_DECLARATION = re.compile(r"^(class |void )")


@dataclass
class _Gen:
    rng: random.Random
    budget: int
    counter: int = 0
    lines: list[str] = field(default_factory=list)

    def fresh(self) -> int:
        self.counter += 1
        return self.counter

    def emit(self, depth: int, text: str) -> None:
        self.lines.append("    " * depth + text)

    def block(self, depth: int, pending: list[list[str]], max_len: int) -> None:
        scope: list[str] = []
        pending = pending + [scope]
        for _ in range(self.rng.randint(0, max_len)):
            if self.budget <= 0:
                return
            self.statement(depth, pending)

    def statement(self, depth: int, pending: list[list[str]]) -> None:
        self.budget -= 1
        live = [v for scope in pending for v in scope]
        kinds = ["access", "arg", "if_null", "if_null_and", "if_other", "while_null", "ternary",
                 "bind", "try", "noise", "if_else"]
        if live:
            kinds += ["use_var", "guard_var", "guard_var_block", "guard_var_block"]
        kind = self.rng.choice(kinds)
        nested = depth < 5 and self.budget > 0
        if kind == "access":
            self.emit(depth, "r.body();")
        elif kind == "arg":
            self.emit(depth, "use(r.body());")
        elif kind == "noise":
            self.emit(depth, "other.call();")
        elif kind == "ternary":
            self.emit(depth, f's{self.fresh()} = r.body() == null ? "a" : "b";')
        elif kind == "bind":
            name = f"v{self.fresh()}"
            self.emit(depth, f"Object {name} = r.body();")
            pending[-1].append(name)
        elif kind in ("use_var", "guard_var", "guard_var_block"):
            name = self.rng.choice(live)
            for scope in pending:
                if name in scope:
                    scope.remove(name)
            if kind == "use_var":
                self.emit(depth, f"use({name});")
            elif kind == "guard_var":
                self.emit(depth, f"if ({name} == null) return;")
            else:
                self.emit(depth, f"if ({name} != null) {{")
                if nested:
                    self.block(depth + 1, pending, 3)
                self.emit(depth, "}")
        elif kind in ("if_null", "if_null_and", "if_other", "while_null", "if_else"):
            header = {
                "if_null": "if (r.body() != null) {",
                "if_null_and": "if (r.body() == null && flag) {",
                "if_other": "if (r.body().isEmpty()) {",
                "while_null": "while (r.body() != null) {",
                "if_else": "if (flag) {",
            }[kind]
            self.emit(depth, header)
            if nested:
                self.block(depth + 1, pending, 3)
            if kind == "if_else":
                self.emit(depth, "} else {")
                if nested:
                    self.block(depth + 1, pending, 2)
            self.emit(depth, "}")
        elif kind == "try":
            self.emit(depth, "try {")
            if nested:
                self.block(depth + 1, pending, 4)
            for exc in self.rng.sample(["Exception", "Error", "RuntimeException"], self.rng.randint(1, 2)):
                e = f"e{self.fresh()}"
                self.emit(depth, f"}} catch ({exc} {e}) {{")
                if self.rng.random() < 0.5:
                    if self.rng.random() < 0.5 or not nested:
                        self.emit(depth + 1, f"log({e});")
                    else:
                        self.block(depth + 1, pending, 2)
            if self.rng.random() < 0.3:
                self.emit(depth, "} finally {")
                if nested:
                    self.block(depth + 1, pending, 2)
            self.emit(depth, "}")


def generate(seed: int) -> str:
    """A compilable-looking Java class with one method of at most 30 statements."""
    rng = random.Random(seed)
    gen = _Gen(rng, budget=rng.randint(1, MAX_STATEMENTS))
    while gen.budget > 0:
        gen.statement(2, [[]])
    head = ["class T {", "    void m(Response r, boolean flag) {"]
    return "\n".join(head + gen.lines + ["    }", "}"]) + "\n"


@dataclass(frozen=True)
class OracleCall:
    line: int
    name: str
    inside_try_with_nonempty_catch: bool


def oracle(text: str) -> tuple[list[OracleCall], dict[int, list[bool]]]:
    """(all call sites, body() guard flags by line) recomputed from raw text."""
    lines = text.splitlines()
    # stack entries: (kind, try_id, opening line index)
    stack: list[tuple[str, int | None, int]] = []
    catch_nonempty: dict[int, bool] = {}
    next_try = 0
    raw_calls: list[tuple[int, str, tuple[int, ...]]] = []

    for idx, raw in enumerate(lines):
        s = raw.strip()
        lineno = idx + 1
        if stack and stack[-1][0] == "catch" and s != "}" and not s.startswith("} "):
            catch_nonempty[stack[-1][1]] = True
        tries = tuple(t for kind, t, _ in stack if kind == "try")
        for m in () if _DECLARATION.match(s) else _CALL.finditer(s):
            if m.group(1) not in _KEYWORDS:
                raw_calls.append((lineno, m.group(1), tries))
        if s.startswith("}"):
            closed = stack.pop()
            if s.startswith("} catch"):
                stack.append(("catch", closed[1], idx))
            elif s.startswith("} finally"):
                stack.append(("finally", closed[1], idx))
            elif s.startswith("} else"):
                stack.append(("other", None, idx))
            continue
        if s.endswith("{"):
            if s.startswith("try"):
                catch_nonempty[next_try] = False
                stack.append(("try", next_try, idx))
                next_try += 1
            else:
                stack.append(("other", None, idx))

    calls = [OracleCall(line, name, any(catch_nonempty[t] for t in tries))
             for line, name, tries in raw_calls]

    guards: dict[int, list[bool]] = {}
    for idx, raw in enumerate(lines):
        s = raw.strip()
        count = s.count("r.body()")
        if not count:
            continue
        if s.startswith("if (") and ("r.body() != null" in s or "r.body() == null" in s):
            flag = True
        elif "= r.body() == null ?" in s:
            flag = True
        else:
            flag = False
            bound = _BIND.match(s)
            if bound:
                flag = _first_use_is_null_check(lines, idx, bound.group(1))
        guards.setdefault(idx + 1, []).extend([flag] * count)
    return calls, guards


def _indent(line: str) -> int:
    return len(line) - len(line.lstrip(" "))


def _first_use_is_null_check(lines: list[str], idx: int, name: str) -> bool:
    level = _indent(lines[idx])
    use = re.compile(rf"\b{name}\b")
    for later in lines[idx + 1:]:
        if _indent(later) < level:
            return False  # binding block closed
        if use.search(later):
            return re.match(rf"^if \({name} [!=]= null\)", later.strip()) is not None
    return False
