"""Equality types and reachability-based decision procedures.

A complete equality type records, for a tuple of register values, exactly
which positions carry equal datums and which are empty: a partition of the
positions with an optional class for the empty value.  The type profile of a
valuation inside a synchronized configuration maps every realized joint type
of (that valuation, another valuation, the left automaton's valuation) to
the locations realizing it; two valuations with equal profiles are
interchangeable for containment checking and one of them can be dropped.

Emptiness and unambiguity are decided by breadth-first search over states
canonicalized up to datum renaming.  Input datums range over the datums in
scope plus one fresh representative, which is exhaustive up to renaming, and
witness words are rebuilt by replaying the recorded letters concretely.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .core import (
    DataWord,
    Datum,
    Letter,
    RegisterAutomaton,
    State,
    SyncConfig,
    Valuation,
    Value,
    _fresh_datum,
    _group_by_valuation,
    normalize_word,
    step_state,
)


# ---------------------------------------------------------------------------
# complete types


@dataclass(frozen=True)
class CompleteType:
    """Equality type of a tuple of register values, stored canonically.

    Position i (1-based) carries the smallest position index of its equality
    class, and the class of empty positions, if present, is flagged by its
    label.  Two value tuples have equal types exactly when some partial
    isomorphism maps one onto the other.
    """

    arity: int
    labels: tuple[int, ...]
    bot_label: int | None = None

    def __post_init__(self):
        if self.arity != len(self.labels):
            raise ValueError("arity does not match the number of labels")
        for i, label in enumerate(self.labels):
            if not 1 <= label <= i + 1 or self.labels[label - 1] != label:
                raise ValueError("labels must be smallest-index class labels")
        if self.bot_label is not None and self.bot_label not in self.labels:
            raise ValueError("the empty-value class label does not occur")

    @property
    def classes(self) -> tuple[tuple[int, ...], ...]:
        """The partition as 1-based position tuples, ordered by class label."""
        members: dict[int, list[int]] = {}
        for i, label in enumerate(self.labels):
            members.setdefault(label, []).append(i + 1)
        return tuple(tuple(members[label]) for label in sorted(members))

    def same_class(self, i: int, j: int) -> bool:
        """Whether 1-based positions i and j hold equal values."""
        return self.labels[i - 1] == self.labels[j - 1]

    def is_empty_position(self, i: int) -> bool:
        """Whether 1-based position i holds the empty value."""
        return self.bot_label is not None and self.labels[i - 1] == self.bot_label


def equality_type(values: Sequence[Value]) -> CompleteType:
    """The unique complete type satisfied by a tuple of register values."""
    first_seen: dict[Value, int] = {}
    labels = []
    bot_label = None
    for i, value in enumerate(values):
        label = first_seen.setdefault(value, i + 1)
        labels.append(label)
        if value is None and bot_label is None:
            bot_label = label
    return CompleteType(len(labels), tuple(labels), bot_label)


# ---------------------------------------------------------------------------
# type profiles and indistinguishability


TypeProfile = dict[CompleteType, frozenset[str]]


def type_profile(sync: SyncConfig, valuation: Valuation) -> TypeProfile:
    """Profile of one valuation inside a synchronized configuration.

    For every other valuation present (including `valuation` itself) the
    joint type of (valuation, other, left valuation) accumulates the
    locations paired with `other`.  Types that are not realized are absent,
    which stands for the empty location set.
    """
    _, a_valuation = sync.a_state
    groups = _group_by_valuation(sync.b_config)
    if valuation not in groups:
        raise ValueError("valuation does not occur in the configuration")
    profile: TypeProfile = {}
    for other, locations in groups.items():
        key = equality_type(valuation + other + a_valuation)
        profile[key] = profile.get(key, frozenset()) | frozenset(locations)
    return profile


def indistinguishable(sync: SyncConfig, first: Valuation, second: Valuation) -> bool:
    """Whether two valuations of the configuration have equal type profiles."""
    return type_profile(sync, first) == type_profile(sync, second)


# ---------------------------------------------------------------------------
# canonical states


def canonical_valuation(valuation: Valuation) -> tuple[Valuation, dict[Datum, int]]:
    """Rename a valuation's datums to 1..t in order of first occurrence."""
    renaming: dict[Datum, int] = {}
    out: list[Value] = []
    for value in valuation:
        if value is None:
            out.append(None)
        else:
            if value not in renaming:
                renaming[value] = len(renaming) + 1
            out.append(renaming[value])
    return tuple(out), renaming


def canonical_state(state: State) -> tuple[State, dict[Datum, int]]:
    """Canonical representative of a state up to datum renaming."""
    location, valuation = state
    renamed, renaming = canonical_valuation(valuation)
    return (location, renamed), renaming


# ---------------------------------------------------------------------------
# breadth-first search over canonical nodes with witness replay


def _sort_key(node):
    if node is None:
        return (0, "")
    if isinstance(node, bool):
        return (1, node)
    if isinstance(node, int):
        return (2, node)
    if isinstance(node, str):
        return (3, node)
    return (4, tuple(_sort_key(part) for part in node))


def _search_words(
    start,
    alphabet: Iterable[str],
    datums_of: Callable,
    step: Callable,
    canonize: Callable,
    is_goal: Callable,
):
    """Shortest path to a goal node, as (goal, witness word), or None.

    `start` must already be canonical.  Letters range over each node's
    datums plus one fresh datum; successors are canonicalized before being
    enqueued, so the visited set stays finite whenever the node space is
    finite up to renaming.
    """
    symbols = sorted(alphabet)
    parents: dict = {start: None}
    if is_goal(start):
        return start, ()
    queue = deque([start])
    while queue:
        node = queue.popleft()
        datums = sorted(datums_of(node))
        for symbol in symbols:
            for datum in datums + [_fresh_datum(datums)]:
                letter = (symbol, datum)
                for successor in sorted(step(node, letter), key=_sort_key):
                    canonical, _ = canonize(successor)
                    if canonical in parents:
                        continue
                    parents[canonical] = (node, letter)
                    if is_goal(canonical):
                        return canonical, _replay(parents, canonical, datums_of, step, canonize)
                    queue.append(canonical)
    return None


def _replay(parents, goal, datums_of, step, canonize) -> DataWord:
    """Rebuild a concrete witness word from recorded (parent, letter) pairs.

    Recorded letters carry datums in each parent's canonical numbering; the
    replay walks the path with concrete datums, allocating a globally fresh
    datum whenever the recorded one was fresh for its node.
    """
    trail: list[tuple[Letter, object]] = []
    node = goal
    while parents[node] is not None:
        parent, letter = parents[node]
        trail.append((letter, node))
        node = parent
    trail.reverse()
    concrete = node  # the root is canonical and concrete at once
    to_concrete = {datum: datum for datum in datums_of(node)}
    next_fresh = _fresh_datum(datums_of(node))
    word: list[Letter] = []
    for (symbol, local), target in trail:
        if local in to_concrete:
            datum = to_concrete[local]
        else:
            datum = next_fresh
            next_fresh += 1
        word.append((symbol, datum))
        for successor in step(concrete, (symbol, datum)):
            canonical, renaming = canonize(successor)
            if canonical == target:
                concrete = successor
                to_concrete = {slot: value for value, slot in renaming.items()}
                break
        else:
            raise AssertionError("replay diverged from the recorded search")
    return normalize_word(tuple(word))


# ---------------------------------------------------------------------------
# emptiness


def emptiness(aut: RegisterAutomaton) -> DataWord | None:
    """A shortest accepted data word, or None when the language is empty."""
    start: State = (aut.initial, (None,) * aut.register_count)
    found = _search_words(
        start,
        aut.alphabet,
        datums_of=lambda state: {v for v in state[1] if v is not None},
        step=lambda state, letter: step_state(aut, state, letter),
        canonize=canonical_state,
        is_goal=lambda state: state[0] in aut.accepting,
    )
    return None if found is None else found[1]


# ---------------------------------------------------------------------------
# unambiguity


@dataclass(frozen=True)
class UnambiguityResult:
    unambiguous: bool
    witness: DataWord | None = None


def check_unambiguous(aut: RegisterAutomaton) -> UnambiguityResult:
    """Decide whether some word has two distinct accepting runs.

    Runs are state sequences, so parallel edges between the same states do
    not create ambiguity by themselves.  The search tracks an ordered pair
    of runs over the same input, with a flag set once the runs have differed
    in some state; a reachable flagged pair with both locations accepting
    yields a witness word with two distinct accepting runs.
    """
    r = aut.register_count
    start = (aut.initial, aut.initial, (None,) * (2 * r), False)

    def datums_of(node):
        return {v for v in node[2] if v is not None}

    def step(node, letter):
        loc1, loc2, joint, diverged = node
        first: State = (loc1, joint[:r])
        second: State = (loc2, joint[r:])
        for s1 in step_state(aut, first, letter):
            for s2 in step_state(aut, second, letter):
                yield (s1[0], s2[0], s1[1] + s2[1], diverged or s1 != s2)

    def canonize(node):
        loc1, loc2, joint, diverged = node
        renamed, renaming = canonical_valuation(joint)
        return (loc1, loc2, renamed, diverged), renaming

    def is_goal(node):
        loc1, loc2, _, diverged = node
        return diverged and loc1 in aut.accepting and loc2 in aut.accepting

    found = _search_words(start, aut.alphabet, datums_of, step, canonize, is_goal)
    if found is None:
        return UnambiguityResult(True)
    return UnambiguityResult(False, found[1])
