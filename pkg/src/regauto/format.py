"""Automaton documents, guard syntax, and word syntax.

Automata are stored as JSON objects:

    {
      "alphabet":  ["a", "b"],
      "registers": ["r1", "r2"],
      "locations": ["start", "seen"],
      "initial":   "start",
      "accepting": ["seen"],
      "edges": [
        {"from": "start", "label": "a", "guard": "!=r1",
         "update": ["r1"], "to": "seen"}
      ]
    }

`guard` defaults to "true" and `update` to the empty list.  Guards follow

    guard := "true" | "=" name | "!=" name | "!" guard
           | "(" guard ")" | guard "&" guard | guard "|" guard

with precedence ! > & > | and left associativity; "!=r" and "|" are
shorthand rewritten into the core connectives (true, =r, !, &) at parse
time.  Words are whitespace-separated "label:datum" tokens with positive
integer datums; the empty string is the empty word.
"""

from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Sequence

from .core import (
    And,
    DataWord,
    Edge,
    EqReg,
    Guard,
    GuardTrue,
    Not,
    RegisterAutomaton,
    TRUE,
)


class FormatError(ValueError):
    """Invalid document, guard, or word syntax."""

    def __init__(self, message: str, path: str | None = None):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


# ---------------------------------------------------------------------------
# guards

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def _tokenize_guard(text: str) -> list[tuple[str, str | None, int]]:
    tokens: list[tuple[str, str | None, int]] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if text.startswith("true", i):
            after = i + 4
            if after == n or not (text[after].isalnum() or text[after] == "_"):
                tokens.append(("true", None, i))
                i = after
                continue
        if text.startswith("!=", i):
            match = _NAME_RE.match(text, i + 2)
            if not match:
                raise FormatError(f"expected a register name at position {i + 2}")
            tokens.append(("neq", match.group(), i))
            i = match.end()
            continue
        if ch == "=":
            match = _NAME_RE.match(text, i + 1)
            if not match:
                raise FormatError(f"expected a register name at position {i + 1}")
            tokens.append(("eq", match.group(), i))
            i = match.end()
            continue
        simple = {"!": "not", "(": "lparen", ")": "rparen", "&": "and", "|": "or"}
        if ch in simple:
            tokens.append((simple[ch], None, i))
            i += 1
            continue
        raise FormatError(f"unexpected character {ch!r} at position {i}")
    return tokens


def parse_guard(text: str, registers: Sequence[str]) -> Guard:
    """Parse a guard over the declared register names.

    "!=r" and "|" are rewritten into the core connectives, so the result
    uses only true, register equality, negation and conjunction.
    """
    index = {name: i for i, name in enumerate(registers)}
    tokens = _tokenize_guard(text)
    position = 0

    def peek():
        return tokens[position] if position < len(tokens) else None

    def advance():
        nonlocal position
        position += 1

    def lookup(name: str, at: int) -> int:
        if name not in index:
            raise FormatError(f"unknown register {name!r} at position {at}")
        return index[name]

    def atom() -> Guard:
        token = peek()
        if token is None:
            raise FormatError("unexpected end of guard")
        kind, name, at = token
        if kind == "true":
            advance()
            return TRUE
        if kind == "eq":
            advance()
            return EqReg(lookup(name, at))
        if kind == "neq":
            advance()
            return Not(EqReg(lookup(name, at)))
        if kind == "lparen":
            advance()
            inner = disjunction()
            closing = peek()
            if closing is None or closing[0] != "rparen":
                raise FormatError(f"unmatched '(' at position {at}")
            advance()
            return inner
        raise FormatError(f"unexpected token at position {at}")

    def unary() -> Guard:
        token = peek()
        if token is not None and token[0] == "not":
            advance()
            return Not(unary())
        return atom()

    def conjunction() -> Guard:
        node = unary()
        while (token := peek()) is not None and token[0] == "and":
            advance()
            node = And(node, unary())
        return node

    def disjunction() -> Guard:
        node = conjunction()
        while (token := peek()) is not None and token[0] == "or":
            advance()
            right = conjunction()
            node = Not(And(Not(node), Not(right)))
        return node

    guard = disjunction()
    leftover = peek()
    if leftover is not None:
        raise FormatError(f"unexpected token at position {leftover[2]}")
    return guard


def guard_to_text(guard: Guard, registers: Sequence[str]) -> str:
    """Render a guard with declared register names; parse_guard inverts it."""
    if isinstance(guard, GuardTrue):
        return "true"
    if isinstance(guard, EqReg):
        return "=" + registers[guard.index]
    if isinstance(guard, Not):
        inner = guard.inner
        if isinstance(inner, EqReg):
            return "!=" + registers[inner.index]
        if isinstance(inner, (GuardTrue, Not)):
            return "!" + guard_to_text(inner, registers)
        return "!(" + guard_to_text(inner, registers) + ")"
    if isinstance(guard, And):
        left = guard_to_text(guard.left, registers)
        right = guard_to_text(guard.right, registers)
        if isinstance(guard.right, And):
            right = "(" + right + ")"
        return left + " & " + right
    raise TypeError(f"unknown guard node {guard!r}")


# ---------------------------------------------------------------------------
# words


def parse_word(text: str) -> DataWord:
    """Parse whitespace-separated "label:datum" tokens; "" is the empty word."""
    letters = []
    for token in text.split():
        label, sep, tail = token.partition(":")
        if not sep or not label or not tail:
            raise FormatError(f"malformed letter {token!r}; expected label:datum")
        try:
            datum = int(tail)
        except ValueError:
            raise FormatError(f"malformed datum in {token!r}") from None
        if datum <= 0:
            raise FormatError(f"datum must be a positive integer in {token!r}")
        letters.append((label, datum))
    return tuple(letters)


def word_to_text(word: DataWord) -> str:
    return " ".join(f"{label}:{datum}" for label, datum in word)


# ---------------------------------------------------------------------------
# automaton documents


def _string_list(document: dict, field: str, path: str | None = None) -> list[str]:
    value = document.get(field)
    where = f"{path}.{field}" if path else field
    if not isinstance(value, list) or any(not isinstance(item, str) for item in value):
        raise FormatError("must be a list of strings", where)
    seen = set()
    for item in value:
        if item in seen:
            raise FormatError(f"duplicate name {item!r}", where)
        seen.add(item)
    return value


_EDGE_KEYS = {"from", "label", "guard", "update", "to"}
_TOP_KEYS = {"alphabet", "registers", "locations", "initial", "accepting", "edges"}


def parse_automaton(document: dict) -> RegisterAutomaton:
    """Validate a document and build the automaton.

    Register names map to indices in declaration order.  Raises FormatError
    carrying the offending field path on any problem.
    """
    if not isinstance(document, dict):
        raise FormatError("document must be a JSON object")
    for key in document:
        if key not in _TOP_KEYS:
            raise FormatError(f"unknown field {key!r}")
    alphabet = _string_list(document, "alphabet")
    registers = _string_list(document, "registers")
    locations = _string_list(document, "locations")
    if not locations:
        raise FormatError("at least one location is required", "locations")
    initial = document.get("initial")
    if not isinstance(initial, str):
        raise FormatError("missing or not a string", "initial")
    if initial not in locations:
        raise FormatError(f"unknown location {initial!r}", "initial")
    accepting = _string_list(document, "accepting")
    for i, name in enumerate(accepting):
        if name not in locations:
            raise FormatError(f"unknown location {name!r}", f"accepting[{i}]")
    raw_edges = document.get("edges", [])
    if not isinstance(raw_edges, list):
        raise FormatError("must be a list", "edges")

    known = set(locations)
    edges = []
    for i, raw in enumerate(raw_edges):
        path = f"edges[{i}]"
        if not isinstance(raw, dict):
            raise FormatError("must be an object", path)
        for key in raw:
            if key not in _EDGE_KEYS:
                raise FormatError(f"unknown field {key!r}", path)
        source = raw.get("from")
        target = raw.get("to")
        label = raw.get("label")
        for field, value in (("from", source), ("to", target), ("label", label)):
            if not isinstance(value, str):
                raise FormatError("missing or not a string", f"{path}.{field}")
        if source not in known:
            raise FormatError(f"unknown location {source!r}", f"{path}.from")
        if target not in known:
            raise FormatError(f"unknown location {target!r}", f"{path}.to")
        if label not in alphabet:
            raise FormatError(f"label {label!r} is not in the alphabet", f"{path}.label")
        guard_text = raw.get("guard", "true")
        if not isinstance(guard_text, str):
            raise FormatError("must be a string", f"{path}.guard")
        try:
            guard = parse_guard(guard_text, registers)
        except FormatError as error:
            raise FormatError(str(error), f"{path}.guard") from None
        update_names = raw.get("update", [])
        if not isinstance(update_names, list) or any(
            not isinstance(name, str) for name in update_names
        ):
            raise FormatError("must be a list of register names", f"{path}.update")
        update = set()
        for name in update_names:
            if name not in registers:
                raise FormatError(f"unknown register {name!r}", f"{path}.update")
            update.add(registers.index(name))
        edges.append(Edge(source, label, guard, frozenset(update), target))

    return RegisterAutomaton(
        alphabet=frozenset(alphabet),
        register_count=len(registers),
        locations=frozenset(locations),
        initial=initial,
        accepting=frozenset(accepting),
        edges=tuple(edges),
    )


def serialize_automaton(aut: RegisterAutomaton) -> dict:
    """Document for an automaton; registers are named r1..rN in index order."""
    registers = [f"r{i + 1}" for i in range(aut.register_count)]
    return {
        "alphabet": sorted(aut.alphabet),
        "registers": registers,
        "locations": sorted(aut.locations),
        "initial": aut.initial,
        "accepting": sorted(aut.accepting),
        "edges": [
            {
                "from": edge.source,
                "label": edge.label,
                "guard": guard_to_text(edge.guard, registers),
                "update": [registers[i] for i in sorted(edge.update)],
                "to": edge.target,
            }
            for edge in aut.edges
        ],
    }


def load_automaton(path) -> RegisterAutomaton:
    """Read and validate an automaton document from a JSON file."""
    text = Path(path).read_text()
    try:
        document = json.loads(text)
    except json.JSONDecodeError as error:
        raise FormatError(f"invalid JSON: {error}") from None
    return parse_automaton(document)
