"""Bounded brute-force ground truth for the decision procedures.

Membership is invariant under injective datum renamings, so enumerating only
normalized words (the i-th distinct datum to appear is i) covers every word
up to renaming; a length-k label sequence has Bell(k) datum patterns instead
of infinitely many datum choices.  Everything here is a bounded certificate:
absence of a counterexample up to some length proves nothing beyond that
length.
"""

from __future__ import annotations

from typing import Iterator

from .core import (
    DataWord,
    RegisterAutomaton,
    accepts_config,
    initial_config,
    membership,
    normalize_word,
    step_state,
    succ_config,
)


def _words_of_length(alphabet, length: int) -> Iterator[DataWord]:
    """Normalized words of one exact length, lexicographic by letters with
    letters ordered by (symbol, datum); datum i+1 appears only after 1..i."""
    symbols = sorted(alphabet)

    def extend(word: DataWord, used: int) -> Iterator[DataWord]:
        if len(word) == length:
            yield word
            return
        for symbol in symbols:
            for datum in range(1, used + 2):
                yield from extend(word + ((symbol, datum),), max(used, datum))

    yield from extend((), 0)


def enumerate_normalized_words(alphabet, max_len: int) -> Iterator[DataWord]:
    """All normalized words of length at most `max_len`, shortest first,
    each exactly once."""
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    for length in range(max_len + 1):
        yield from _words_of_length(alphabet, length)


def _first_counterexample(
    a: RegisterAutomaton, b: RegisterAutomaton, length: int
) -> DataWord | None:
    """First normalized word of exactly `length` accepted by `a` but not by
    `b`, in the order of _words_of_length.  Configurations are threaded
    through the enumeration, and a branch is cut once `a` has no states left
    (no extension can be accepted)."""
    symbols = sorted(a.alphabet)

    def search(used, config_a, config_b, remaining) -> DataWord | None:
        if remaining == 0:
            if accepts_config(a, config_a) and not accepts_config(b, config_b):
                return ()
            return None
        if not config_a:
            return None
        for symbol in symbols:
            for datum in range(1, used + 2):
                letter = (symbol, datum)
                tail = search(
                    max(used, datum),
                    succ_config(a, config_a, letter),
                    succ_config(b, config_b, letter),
                    remaining - 1,
                )
                if tail is not None:
                    return (letter,) + tail
        return None

    return search(0, initial_config(a), initial_config(b), length)


def oracle_containment(
    a: RegisterAutomaton, b: RegisterAutomaton, max_len: int
) -> DataWord | None:
    """First normalized word accepted by `a` but not by `b`, or None.

    None certifies only that no counterexample of length at most `max_len`
    exists; it is not a containment proof.
    """
    if a.alphabet != b.alphabet:
        raise ValueError("the automata use different alphabets")
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    for length in range(max_len + 1):
        word = _first_counterexample(a, b, length)
        if word is not None:
            return word
    return None


def find_witness(a: RegisterAutomaton, b: RegisterAutomaton, cap: int) -> DataWord | None:
    """Iteratively deepened counterexample search up to length `cap`.

    A found word is normalized and re-verified through plain membership on
    both automata before being returned; None means no counterexample of
    length at most `cap` exists.
    """
    if a.alphabet != b.alphabet:
        raise ValueError("the automata use different alphabets")
    for length in range(cap + 1):
        word = _first_counterexample(a, b, length)
        if word is not None:
            witness = normalize_word(word)
            if membership(a, witness) and not membership(b, witness):
                return witness
    return None


def count_accepting_runs(aut: RegisterAutomaton, word: DataWord) -> int:
    """Number of distinct accepting runs on `word`; runs are state sequences."""
    runs = {(state,) for state in initial_config(aut)}
    for letter in word:
        runs = {run + (nxt,) for run in runs for nxt in step_state(aut, run[-1], letter)}
        if not runs:
            return 0
    return sum(1 for run in runs if run[-1][0] in aut.accepting)
