"""Containment checking: is every word accepted by A also accepted by B?

B must be unambiguous (at most one accepting run per word); A may be an
arbitrary non-deterministic register automaton.  The question reduces to
reachability of a "bad" node in the synchronized space that pairs one
concrete run of A with the full configuration of B: bad means A's location
accepts while no state of B's configuration does.

Two devices keep the search finite.  Configurations are collapsed: when two
distinct valuations have equal type profiles they are interchangeable for
reaching a bad node, so one valuation's slice is dropped.  And nodes are
explored up to injective datum renaming through a canonical abstract form
(A-location, one B-location block per distinct valuation, joint equality
type), so equivalent nodes are visited once.

`Contained` verdicts are exact.  `NotContained` verdicts are exact too, but
the abstract trace attached to them is a diagnostic only: its letters are
not claimed to spell a counterexample word, so a concrete witness is sought
separately by bounded enumeration and re-verified before being reported.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, replace

from .analysis import (
    CompleteType,
    check_unambiguous,
    equality_type,
    indistinguishable,
)
from .core import (
    Configuration,
    DataWord,
    Edge,
    Letter,
    RegisterAutomaton,
    SyncConfig,
    TRUE,
    Valuation,
    _fresh_datum,
    _group_by_valuation,
    _minimize_arrangement,
    _signature_groups,
    _state_key,
    _valuation_key,
    accepts_config,
    data_of_sync,
    initial_config,
    membership,
    step_state,
    succ_config,
)
from .oracle import find_witness


class AlphabetMismatchError(ValueError):
    """The two automata must share one alphabet."""


class AmbiguousAutomatonError(ValueError):
    """The right-hand automaton admits two accepting runs on some word."""

    def __init__(self, witness: DataWord | None):
        super().__init__("the specification automaton is ambiguous")
        self.witness = witness


class NodeBudgetExceededError(RuntimeError):
    """The search needed more abstract nodes than the configured budget."""


COLLAPSE_FULL = "full"  # drop a valuation only when type profiles coincide
COLLAPSE_TYPES = "types"  # unsound: drop on equal self-type alone (demo only)
COLLAPSE_OFF = "off"  # no collapsing; exploration bounded by the node budget

_COLLAPSE_MODES = (COLLAPSE_FULL, COLLAPSE_TYPES, COLLAPSE_OFF)


@dataclass(frozen=True)
class ContainmentOptions:
    witness_cap: int = 8  # max length for the concrete counterexample search
    node_budget: int = 1_000_000  # hard cap on distinct abstract nodes
    collapse: str = COLLAPSE_FULL
    check_b_unambiguous: bool = True


@dataclass(frozen=True)
class Verdict:
    """Outcome of a containment check, with search diagnostics.

    When `witness_verified` is set, the witness was re-checked to be
    accepted by the left automaton and rejected by the right one.
    """

    contained: bool
    abstract_trace: tuple[Letter, ...] | None = None
    witness: DataWord | None = None
    witness_verified: bool = False
    nodes_explored: int = 0
    peak_valuations: int = 0


# ---------------------------------------------------------------------------
# synchronized configurations


def initial_sync(a: RegisterAutomaton, b: RegisterAutomaton) -> SyncConfig:
    return SyncConfig(
        (a.initial, (None,) * a.register_count),
        initial_config(b),
    )


def is_bad(a: RegisterAutomaton, b: RegisterAutomaton, sync: SyncConfig) -> bool:
    """A's location accepts while no state of B's configuration does."""
    return sync.a_state[0] in a.accepting and not accepts_config(b, sync.b_config)


def sync_successors(
    a: RegisterAutomaton,
    b: RegisterAutomaton,
    sync: SyncConfig,
    datums: list[int] | None = None,
) -> list[tuple[Letter, SyncConfig]]:
    """One-letter successors, as (letter, successor) pairs.

    A moves non-deterministically, one successor per enabled A-transition;
    B advances to its full successor configuration.  Unless `datums` is
    given, input datums range over the datums present in the configuration
    plus one fresh representative, which covers all inputs up to renaming.
    """
    if datums is None:
        present = sorted(data_of_sync(sync))
        datums = present + [_fresh_datum(present)]
    out: list[tuple[Letter, SyncConfig]] = []
    for symbol in sorted(a.alphabet):
        for datum in datums:
            letter = (symbol, datum)
            a_next = step_state(a, sync.a_state, letter)
            if not a_next:
                continue
            b_next = succ_config(b, sync.b_config, letter)
            for a_state in sorted(a_next, key=_state_key):
                out.append((letter, SyncConfig(a_state, b_next)))
    return out


# ---------------------------------------------------------------------------
# collapsing


def _slice_removed(sync: SyncConfig, valuation: Valuation) -> SyncConfig:
    kept = frozenset(state for state in sync.b_config if state[1] != valuation)
    return SyncConfig(sync.a_state, kept)


def collapse_once(sync: SyncConfig, keep: Valuation, drop: Valuation) -> SyncConfig:
    """Remove every B-state whose valuation is exactly `drop`.

    Only legal when `keep` and `drop` are distinct valuations of the
    configuration with equal type profiles; then the result reaches a bad
    node exactly when the original does.
    """
    if keep == drop:
        raise ValueError("cannot collapse a valuation with itself")
    if not indistinguishable(sync, keep, drop):
        raise ValueError("valuations are distinguishable; dropping one is unsound")
    return _slice_removed(sync, drop)


def _interchangeable(sync: SyncConfig, first: Valuation, second: Valuation, mode: str) -> bool:
    if mode == COLLAPSE_FULL:
        return indistinguishable(sync, first, second)
    if mode == COLLAPSE_TYPES:
        _, a_valuation = sync.a_state
        return equality_type(first + a_valuation) == equality_type(second + a_valuation)
    raise ValueError(f"unknown collapse mode {mode!r}")


def collapse_max(sync: SyncConfig, mode: str = COLLAPSE_FULL) -> SyncConfig:
    """Collapse until no two distinct valuations are interchangeable.

    Valuation pairs are scanned in sorted order and the larger valuation's
    slice is dropped first, so the result is deterministic.  `mode` selects
    the interchangeability test: profile equality (sound), equality of the
    valuations' own joint type with the A-valuation (unsound, kept to
    demonstrate why profiles are needed), or none.
    """
    if mode == COLLAPSE_OFF:
        return sync
    current = sync
    while True:
        valuations = sorted({v for _, v in current.b_config}, key=_valuation_key)
        dropped = None
        for i, keep in enumerate(valuations):
            for drop in valuations[i + 1 :]:
                if _interchangeable(current, keep, drop, mode):
                    dropped = drop
                    break
            if dropped is not None:
                break
        if dropped is None:
            return current
        current = _slice_removed(current, dropped)


# ---------------------------------------------------------------------------
# abstract configurations


@dataclass(frozen=True)
class AbstractConfig:
    """Canonical renaming-invariant form of a synchronized configuration:
    the A-location, one B-location block per distinct valuation, and the
    joint equality type of (valuation_1, ..., valuation_s, A-valuation)."""

    a_location: str
    blocks: tuple[frozenset[str], ...]
    typ: CompleteType


def abstract_of(sync: SyncConfig) -> AbstractConfig:
    """Abstract a synchronized configuration.

    Two synchronized configurations yield equal abstractions exactly when
    some partial isomorphism maps one onto the other.  Blocks are pre-ordered
    by a renaming-invariant signature (location set, valuation shape relative
    to the A-valuation); residual ties take the lexicographically least
    encoding over the orderings of the tied group.
    """
    a_location, a_valuation = sync.a_state
    groups = _group_by_valuation(sync.b_config)
    locset_of = {v: tuple(sorted(locs)) for v, locs in groups.items()}
    _, best, _ = _minimize_arrangement(
        _signature_groups(groups, a_valuation), locset_of.__getitem__, tail=a_valuation
    )
    typ = equality_type(tuple(itertools.chain.from_iterable(best)) + a_valuation)
    blocks = tuple(frozenset(groups[valuation]) for valuation in best)
    return AbstractConfig(a_location, blocks, typ)


def materialize(abstract: AbstractConfig, a_registers: int, b_registers: int) -> SyncConfig:
    """A concrete synchronized configuration realizing an abstraction.

    Every equality class takes its class label as datum, so all datums lie
    in 1..(s*n + m) for s blocks, n right registers and m left registers;
    empty positions stay empty.
    """
    s = len(abstract.blocks)
    if abstract.typ.arity != s * b_registers + a_registers:
        raise ValueError("type arity does not match block and register counts")
    values = [
        None if label == abstract.typ.bot_label else label for label in abstract.typ.labels
    ]
    states = set()
    for i, block in enumerate(abstract.blocks):
        valuation = tuple(values[i * b_registers : (i + 1) * b_registers])
        for location in block:
            states.add((location, valuation))
    a_valuation = tuple(values[s * b_registers :])
    return SyncConfig((abstract.a_location, a_valuation), frozenset(states))


def _is_bad_abstract(a: RegisterAutomaton, b: RegisterAutomaton, node: AbstractConfig) -> bool:
    return node.a_location in a.accepting and all(
        not (block & b.accepting) for block in node.blocks
    )


# ---------------------------------------------------------------------------
# the decision procedures


def _closure(seed: set[str], step: dict[str, set[str]]) -> set[str]:
    out = set(seed)
    frontier = list(seed)
    while frontier:
        for nxt in step[frontier.pop()]:
            if nxt not in out:
                out.add(nxt)
                frontier.append(nxt)
    return out


def trim_automaton(aut: RegisterAutomaton) -> RegisterAutomaton:
    """Drop locations that cannot lie on any accepting run: unreachable from
    the initial location in the location graph, or with no location path to
    an accepting location.  The language and the accepting runs are exactly
    preserved; during containment search this keeps configurations free of
    states that could never contribute an accepting run (such states are
    rarely collapsible because their datums may interlock arbitrarily)."""
    forward: dict[str, set[str]] = {location: set() for location in aut.locations}
    backward: dict[str, set[str]] = {location: set() for location in aut.locations}
    for edge in aut.edges:
        forward[edge.source].add(edge.target)
        backward[edge.target].add(edge.source)
    reachable = _closure({aut.initial}, forward)
    coaccessible = _closure(set(aut.accepting), backward)
    core = reachable & coaccessible
    return RegisterAutomaton(
        alphabet=aut.alphabet,
        register_count=aut.register_count,
        locations=frozenset(core | {aut.initial}),
        initial=aut.initial,
        accepting=aut.accepting & core,
        edges=tuple(
            edge for edge in aut.edges if edge.source in core and edge.target in core
        ),
    )


def check_containment(
    a: RegisterAutomaton,
    b: RegisterAutomaton,
    options: ContainmentOptions | None = None,
) -> Verdict:
    """Decide whether every word accepted by `a` is accepted by `b`.

    Breadth-first search over canonical abstract nodes: each expansion
    materializes the node, fires every (symbol, datum) choice, collapses the
    successor maximally and re-abstracts it.  The verdict is Contained
    exactly when no bad node is reachable.  On NotContained the abstract
    trace is attached as a diagnostic and a concrete counterexample of
    length at most `options.witness_cap` is searched for and verified.
    """
    options = options or ContainmentOptions()
    if options.collapse not in _COLLAPSE_MODES:
        raise ValueError(f"unknown collapse mode {options.collapse!r}")
    if a.alphabet != b.alphabet:
        raise AlphabetMismatchError("the automata use different alphabets")
    if options.check_b_unambiguous:
        result = check_unambiguous(b)
        if not result.unambiguous:
            raise AmbiguousAutomatonError(result.witness)
    a = trim_automaton(a)
    b = trim_automaton(b)

    root = abstract_of(collapse_max(initial_sync(a, b), options.collapse))
    parents: dict[AbstractConfig, tuple[AbstractConfig, Letter] | None] = {root: None}
    peak = len(root.blocks)
    bad = root if _is_bad_abstract(a, b, root) else None
    queue = deque([root] if bad is None else [])
    while queue:
        node = queue.popleft()
        sync = materialize(node, a.register_count, b.register_count)
        for letter, successor in sync_successors(a, b, sync):
            collapsed = collapse_max(successor, options.collapse)
            child = abstract_of(collapsed)
            peak = max(peak, len(child.blocks))
            if child in parents:
                continue
            if len(parents) >= options.node_budget:
                raise NodeBudgetExceededError(
                    f"search exceeded the budget of {options.node_budget} abstract nodes"
                )
            parents[child] = (node, letter)
            if _is_bad_abstract(a, b, child):
                bad = child
                queue.clear()
                break
            queue.append(child)
    if bad is None:
        return Verdict(contained=True, nodes_explored=len(parents), peak_valuations=peak)
    trace = _trace_to(parents, bad)
    witness = find_witness(a, b, options.witness_cap)
    verified = witness is not None and membership(a, witness) and not membership(b, witness)
    return Verdict(
        contained=False,
        abstract_trace=trace,
        witness=witness,
        witness_verified=verified,
        nodes_explored=len(parents),
        peak_valuations=peak,
    )


def _trace_to(parents, node) -> tuple[Letter, ...]:
    letters: list[Letter] = []
    while parents[node] is not None:
        node, letter = parents[node]
        letters.append(letter)
    letters.reverse()
    return tuple(letters)


def universal_automaton(alphabet) -> RegisterAutomaton:
    """A one-location automaton accepting every data word over `alphabet`."""
    location = "u"
    return RegisterAutomaton(
        alphabet=frozenset(alphabet),
        register_count=0,
        locations=frozenset({location}),
        initial=location,
        accepting=frozenset({location}),
        edges=tuple(
            Edge(location, symbol, TRUE, frozenset(), location)
            for symbol in sorted(alphabet)
        ),
    )


def check_universal(b: RegisterAutomaton, options: ContainmentOptions | None = None) -> Verdict:
    """Decide whether `b` accepts every data word over its alphabet."""
    return check_containment(universal_automaton(b.alphabet), b, options)


@dataclass(frozen=True)
class EquivalenceVerdict:
    forward: Verdict  # first ⊆ second
    backward: Verdict  # second ⊆ first

    @property
    def equivalent(self) -> bool:
        return self.forward.contained and self.backward.contained


def check_equivalent(
    a: RegisterAutomaton,
    b: RegisterAutomaton,
    options: ContainmentOptions | None = None,
) -> EquivalenceVerdict:
    """Mutual containment; both automata must be unambiguous."""
    options = options or ContainmentOptions()
    if options.check_b_unambiguous:
        for automaton in (a, b):
            result = check_unambiguous(automaton)
            if not result.unambiguous:
                raise AmbiguousAutomatonError(result.witness)
    inner = replace(options, check_b_unambiguous=False)
    return EquivalenceVerdict(
        forward=check_containment(a, b, inner),
        backward=check_containment(b, a, inner),
    )
