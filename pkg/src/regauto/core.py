"""Register automata over an infinite equality data domain.

A data word is a finite sequence of (label, datum) pairs with labels drawn
from a finite alphabet and datums from an infinite supply of positive
integers.  A register automaton processes data words using finitely many
registers: every edge carries a guard that compares the input datum against
registers for equality, and a set of registers to overwrite with the datum.

Register contents are plain ``int`` datums, with ``None`` standing for the
empty register; ``None`` equals itself and never matches an input datum.
All semantics in this module are invariant under injective renamings of
datums (partial isomorphisms), which is what makes configuration spaces
explorable up to canonical renaming.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

Datum = int
Value = int | None
Valuation = tuple[Value, ...]
State = tuple[str, Valuation]
Letter = tuple[str, Datum]
DataWord = tuple[Letter, ...]
Configuration = frozenset[State]
PartialIso = dict[Value, Value]


# ---------------------------------------------------------------------------
# guards


class Guard:
    """Guard expression evaluated against a register valuation and a datum."""

    def registers(self) -> Iterator[int]:
        yield from ()


@dataclass(frozen=True)
class GuardTrue(Guard):
    pass


@dataclass(frozen=True)
class EqReg(Guard):
    index: int

    def registers(self) -> Iterator[int]:
        yield self.index


@dataclass(frozen=True)
class Not(Guard):
    inner: Guard

    def registers(self) -> Iterator[int]:
        yield from self.inner.registers()


@dataclass(frozen=True)
class And(Guard):
    left: Guard
    right: Guard

    def registers(self) -> Iterator[int]:
        yield from self.left.registers()
        yield from self.right.registers()


TRUE = GuardTrue()


def eval_guard(valuation: Valuation, datum: Datum, guard: Guard) -> bool:
    """Evaluate a guard; an empty register never matches the input datum."""
    if isinstance(guard, GuardTrue):
        return True
    if isinstance(guard, EqReg):
        value = valuation[guard.index]
        return value is not None and value == datum
    if isinstance(guard, Not):
        return not eval_guard(valuation, datum, guard.inner)
    if isinstance(guard, And):
        return eval_guard(valuation, datum, guard.left) and eval_guard(
            valuation, datum, guard.right
        )
    raise TypeError(f"unknown guard node {guard!r}")


# ---------------------------------------------------------------------------
# the automaton model


@dataclass(frozen=True)
class Edge:
    source: str
    label: str
    guard: Guard
    update: frozenset[int]
    target: str

    def __post_init__(self):
        object.__setattr__(self, "update", frozenset(self.update))


@dataclass(frozen=True)
class RegisterAutomaton:
    alphabet: frozenset[str]
    register_count: int
    locations: frozenset[str]
    initial: str
    accepting: frozenset[str]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, "alphabet", frozenset(self.alphabet))
        object.__setattr__(self, "locations", frozenset(self.locations))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        object.__setattr__(self, "edges", tuple(self.edges))
        if self.register_count < 0:
            raise ValueError("register count must be non-negative")
        if self.initial not in self.locations:
            raise ValueError(f"initial location {self.initial!r} is not a location")
        if not self.accepting <= self.locations:
            raise ValueError("accepting locations must be locations")
        for edge in self.edges:
            if edge.source not in self.locations or edge.target not in self.locations:
                raise ValueError(f"edge {edge} must connect declared locations")
            if edge.label not in self.alphabet:
                raise ValueError(f"edge label {edge.label!r} is not in the alphabet")
            for index in edge.guard.registers():
                if not 0 <= index < self.register_count:
                    raise ValueError(f"guard register index {index} out of range")
            for index in edge.update:
                if not 0 <= index < self.register_count:
                    raise ValueError(f"update register index {index} out of range")

    @cached_property
    def _edges_from(self) -> dict[tuple[str, str], tuple[Edge, ...]]:
        table: dict[tuple[str, str], list[Edge]] = {}
        for edge in self.edges:
            table.setdefault((edge.source, edge.label), []).append(edge)
        return {key: tuple(edges) for key, edges in table.items()}


def initial_config(aut: RegisterAutomaton) -> Configuration:
    return frozenset({(aut.initial, (None,) * aut.register_count)})


# ---------------------------------------------------------------------------
# data accessors


def word_labels(word: DataWord) -> tuple[str, ...]:
    return tuple(label for label, _ in word)


def data_of_word(word: DataWord) -> set[Datum]:
    return {datum for _, datum in word}


def data_of_valuation(valuation: Valuation) -> set[Datum]:
    return {value for value in valuation if value is not None}


def data_of_config(config: Configuration) -> set[Datum]:
    out: set[Datum] = set()
    for _, valuation in config:
        out |= data_of_valuation(valuation)
    return out


def _fresh_datum(datums: Iterable[Datum]) -> Datum:
    return max(datums, default=0) + 1


def _valuation_key(valuation: Valuation):
    return tuple((0, 0) if value is None else (1, value) for value in valuation)


def _state_key(state: State):
    return (state[0], _valuation_key(state[1]))


# ---------------------------------------------------------------------------
# runs and configurations


def step_state(aut: RegisterAutomaton, state: State, letter: Letter) -> frozenset[State]:
    """Successor states of one state on one input letter."""
    label, datum = letter
    if label not in aut.alphabet:
        raise ValueError(f"label {label!r} is not in the alphabet")
    location, valuation = state
    out = set()
    for edge in aut._edges_from.get((location, label), ()):
        if eval_guard(valuation, datum, edge.guard):
            written = tuple(
                datum if i in edge.update else valuation[i]
                for i in range(aut.register_count)
            )
            out.add((edge.target, written))
    return frozenset(out)


def succ_config(aut: RegisterAutomaton, config: Configuration, letter: Letter) -> Configuration:
    """Successor configuration: the union of state successors."""
    out: set[State] = set()
    for state in config:
        out |= step_state(aut, state, letter)
    return frozenset(out)


def succ_word(aut: RegisterAutomaton, config: Configuration, word: DataWord) -> Configuration:
    """Iterated successor configuration along a whole word."""
    current = config
    for letter in word:
        current = succ_config(aut, current, letter)
    return current


def accepts_config(aut: RegisterAutomaton, config: Configuration) -> bool:
    return any(location in aut.accepting for location, _ in config)


def reachable_config(aut: RegisterAutomaton, word: DataWord) -> Configuration:
    """Configuration reached from the initial state after reading `word`."""
    return succ_word(aut, initial_config(aut), word)


def membership(aut: RegisterAutomaton, word: DataWord) -> bool:
    """Whether some run from the initial state accepts `word`."""
    return accepts_config(aut, reachable_config(aut, word))


# ---------------------------------------------------------------------------
# synchronized configurations (used by the containment machinery)


@dataclass(frozen=True)
class SyncConfig:
    """One concrete state of a left automaton paired with the full
    configuration of a right automaton after the same input word."""

    a_state: State
    b_config: Configuration


def data_of_sync(sync: SyncConfig) -> set[Datum]:
    return data_of_valuation(sync.a_state[1]) | data_of_config(sync.b_config)


# ---------------------------------------------------------------------------
# partial isomorphisms


def apply_iso(iso: PartialIso, value):
    """Apply an injective datum renaming pointwise to a configuration or word.

    The renaming must fix the empty value and map datums to datums; every
    datum occurring in the argument must be in its domain.
    """
    if None in iso and iso[None] is not None:
        raise ValueError("a partial isomorphism must fix the empty value")
    images = [v for k, v in iso.items() if k is not None]
    if any(v is None for v in images):
        raise ValueError("datums must be renamed to datums")
    if len(set(images)) != len(images):
        raise ValueError("the renaming is not injective")

    def rename(datum):
        if datum is None:
            return None
        if datum not in iso:
            raise ValueError(f"datum {datum} is outside the renaming's domain")
        return iso[datum]

    if isinstance(value, frozenset):
        return frozenset(
            (location, tuple(rename(v) for v in valuation))
            for location, valuation in value
        )
    return tuple((label, rename(datum)) for label, datum in value)


def normalize_word(word: DataWord) -> DataWord:
    """Rename datums so the i-th distinct datum to appear is i."""
    renaming: dict[Datum, Datum] = {}
    out = []
    for label, datum in word:
        if datum not in renaming:
            renaming[datum] = len(renaming) + 1
        out.append((label, renaming[datum]))
    return tuple(out)


# ---------------------------------------------------------------------------
# canonical renaming of configurations


def _pattern(valuation: Valuation, reference: Valuation = ()) -> tuple:
    """Renaming-invariant shape of a valuation: per position, whether it is
    empty, repeats a reference position, repeats an earlier own position, or
    holds a datum fresh to both."""
    codes = []
    for j, value in enumerate(valuation):
        if value is None:
            codes.append(("bot", 0))
            continue
        if value in reference:
            codes.append(("ref", reference.index(value)))
            continue
        k = valuation.index(value)
        codes.append(("self", k) if k < j else ("new", 0))
    return tuple(codes)


def _group_by_valuation(config: Configuration) -> dict[Valuation, set[str]]:
    groups: dict[Valuation, set[str]] = {}
    for location, valuation in config:
        groups.setdefault(valuation, set()).add(location)
    return groups


def _encode_block(valuation: Valuation, locations, renaming: dict[Datum, int]):
    """Encode one block under the running first-occurrence renaming,
    extending `renaming` in place; 0 stands for the empty value."""
    codes = []
    for value in valuation:
        if value is None:
            codes.append(0)
        else:
            if value not in renaming:
                renaming[value] = len(renaming) + 1
            codes.append(renaming[value])
    return (locations, tuple(codes))


def _encode_arrangement(arrangement, locset_of, tail: Valuation):
    renaming: dict[Datum, int] = {}
    pieces = tuple(
        _encode_block(valuation, locset_of(valuation), renaming)
        for valuation in arrangement
    )
    tail_piece = _encode_block(tail, (), renaming)
    return pieces + (tail_piece,), renaming


def _minimize_arrangement(groups: list[list[Valuation]], locset_of, tail: Valuation = ()):
    """Least block-sequence encoding over the orderings of the valuations
    that keep the given group order; ties inside a group are broken by
    reordering its members.  Returns (key, arrangement, renaming).

    The encoding lists, per block, its location set and its valuation under
    a first-occurrence datum renaming, followed by `tail` encoded the same
    way.  A group whose members are pairwise swap-symmetric (exchanging any
    two of them leaves the whole encoding unchanged) keeps its given order:
    encoding symmetries compose, so pairwise symmetry makes every ordering
    of such members encode identically.  The remaining groups are searched
    best-first block by block; a branch is dropped once its encoded prefix
    exceeds the best prefix, and equal prefixes all survive because their
    underlying renamings can diverge on later blocks.
    """
    identity = tuple(valuation for group in groups for valuation in group)
    base_key, _ = _encode_arrangement(identity, locset_of, tail)
    enumerated = []
    for index, group in enumerate(groups):
        if len(group) == 1:
            enumerated.append(False)
            continue
        symmetric = True
        for i in range(len(group)):
            for j in range(i + 1, len(group)):
                swapped = list(group)
                swapped[i], swapped[j] = swapped[j], swapped[i]
                candidate = groups[:index] + [swapped] + groups[index + 1 :]
                flat = tuple(v for g in candidate for v in g)
                if _encode_arrangement(flat, locset_of, tail)[0] != base_key:
                    symmetric = False
                    break
            if not symmetric:
                break
        enumerated.append(not symmetric)

    # partial = (arrangement so far, encoded pieces, renaming)
    partials = [((), (), {})]
    for index, group in enumerate(groups):
        if not enumerated[index]:
            extended = []
            for arrangement, pieces, renaming in partials:
                renaming = dict(renaming)
                grown = list(pieces)
                for valuation in group:
                    grown.append(_encode_block(valuation, locset_of(valuation), renaming))
                extended.append((arrangement + tuple(group), tuple(grown), renaming))
            partials = _minimal_partials(extended)
            continue
        for _ in range(len(group)):
            extended = []
            for arrangement, pieces, renaming in partials:
                for valuation in group:
                    if valuation in arrangement:
                        continue
                    fresh = dict(renaming)
                    piece = _encode_block(valuation, locset_of(valuation), fresh)
                    extended.append((arrangement + (valuation,), pieces + (piece,), fresh))
            partials = _minimal_partials(extended)
    best = None
    for arrangement, pieces, renaming in partials:
        renaming = dict(renaming)
        key = pieces + (_encode_block(tail, (), renaming),)
        if best is None or key < best[0]:
            best = (key, arrangement, renaming)
    return best


def _minimal_partials(extended):
    least = min(pieces for _, pieces, _ in extended)
    kept = []
    seen = set()
    for arrangement, pieces, renaming in extended:
        if pieces != least:
            continue
        mark = (frozenset(arrangement), tuple(sorted(renaming.items())))
        if mark in seen:
            continue
        seen.add(mark)
        kept.append((arrangement, pieces, renaming))
    return kept


def _signature_groups(by_valuation: dict[Valuation, set[str]], reference: Valuation = ()):
    """Valuations grouped by a renaming-invariant signature, in signature
    order; the order inside a group is deterministic but arbitrary."""
    tied: dict[tuple, list[Valuation]] = {}
    for valuation, locations in by_valuation.items():
        signature = (tuple(sorted(locations)), _pattern(valuation, reference))
        tied.setdefault(signature, []).append(valuation)
    return [sorted(tied[signature], key=_valuation_key) for signature in sorted(tied)]


def canonical_config(config: Configuration) -> tuple[tuple, dict[Datum, int]]:
    """Canonical datum renaming of a configuration.

    Returns (key, renaming) where `renaming` maps the configuration's datums
    injectively onto 1..t and `key` lists the blocks of the configuration
    (location set plus renamed valuation, 0 for empty registers) in a
    canonical order.  Two configurations have equal keys exactly when some
    partial isomorphism maps one onto the other.

    Blocks are pre-ordered by a renaming-invariant signature (location set,
    valuation shape); residual ties are resolved by the lexicographically
    least encoding over the orderings of the tied group.
    """
    by_valuation = _group_by_valuation(config)
    locset_of = {v: tuple(sorted(locs)) for v, locs in by_valuation.items()}
    key, _, renaming = _minimize_arrangement(
        _signature_groups(by_valuation), locset_of.__getitem__
    )
    return key, renaming


def configs_equivalent(first: Configuration, second: Configuration) -> PartialIso | None:
    """A partial isomorphism mapping `first` onto `second`, or None."""
    key1, renaming1 = canonical_config(first)
    key2, renaming2 = canonical_config(second)
    if key1 != key2:
        return None
    slot_to_datum = {slot: datum for datum, slot in renaming2.items()}
    mapping: PartialIso = {datum: slot_to_datum[slot] for datum, slot in renaming1.items()}
    mapping[None] = None
    return mapping
