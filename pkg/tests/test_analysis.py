import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from autgen import (
    val_key,
    brute_force_equivalent,
    brute_force_tuple_iso,
    padded_sync,
    random_automaton,
    random_sync,
    random_word,
)
from regauto import (
    CompleteType,
    Edge,
    EqReg,
    Not,
    RegisterAutomaton,
    SyncConfig,
    TRUE,
    apply_iso,
    canonical_state,
    canonical_valuation,
    check_unambiguous,
    emptiness,
    equality_type,
    indistinguishable,
    membership,
    type_profile,
)
from regauto.oracle import count_accepting_runs, enumerate_normalized_words


# ---------------------------------------------------------------------------
# complete types


def test_equality_type_with_empty_position():
    typ = equality_type((1, 1, None))
    assert typ.classes == ((1, 2), (3,))
    assert typ.bot_label == 3
    assert typ.is_empty_position(3) and not typ.is_empty_position(1)


def test_equality_type_of_five_tuple_first_shape():
    # (a, b, d) for a=(1,3), b=(2,3), d=(3): positions 2, 4, 5 coincide
    typ = equality_type((1, 3, 2, 3, 3))
    assert typ.same_class(2, 4) and typ.same_class(4, 5)
    assert not typ.same_class(1, 2)
    assert not typ.same_class(1, 3)
    assert not typ.same_class(3, 2)
    assert typ.bot_label is None
    assert typ == CompleteType(5, (1, 2, 3, 2, 2))


def test_equality_type_of_five_tuple_second_shape():
    # (a, c, d) for a=(1,3), c=(1,2), d=(3)
    typ = equality_type((1, 3, 1, 2, 3))
    assert typ.same_class(1, 3) and typ.same_class(2, 5)
    assert not typ.same_class(1, 2)
    assert not typ.same_class(2, 4)
    assert not typ.same_class(4, 1)
    assert typ == CompleteType(5, (1, 2, 1, 4, 2))


def test_complete_type_validation():
    with pytest.raises(ValueError):
        CompleteType(2, (1,))
    with pytest.raises(ValueError):
        CompleteType(2, (2, 2))  # label must be the smallest index of its class
    with pytest.raises(ValueError):
        CompleteType(2, (1, 1), bot_label=2)


def test_equality_type_zero_arity():
    assert equality_type(()) == CompleteType(0, (), None)


def _values_space(arity, pool):
    return itertools.product([None] + list(pool), repeat=arity)


@pytest.mark.parametrize("arity", [1, 2, 3])
def test_types_equal_iff_renaming_exists_exhaustive(arity):
    pool = range(1, arity + 2)
    for first in _values_space(arity, pool):
        for second in _values_space(arity, pool):
            expected = brute_force_tuple_iso(first, second)
            assert (equality_type(first) == equality_type(second)) == expected


@settings(max_examples=300)
@given(st.data())
def test_types_equal_iff_renaming_exists_sampled(data):
    arity = data.draw(st.integers(4, 5))
    values = st.one_of(st.none(), st.integers(1, 4))
    first = tuple(data.draw(values) for _ in range(arity))
    second = tuple(data.draw(values) for _ in range(arity))
    assert (equality_type(first) == equality_type(second)) == brute_force_tuple_iso(first, second)


# ---------------------------------------------------------------------------
# type profiles and indistinguishability


def test_profile_keys_in_small_configuration(profile_sync_small):
    a, b = (1, 3), (2, 3)
    profile_a = type_profile(profile_sync_small, a)
    profile_b = type_profile(profile_sync_small, b)
    shared = equality_type((1, 3, 2, 3, 3))
    separating = equality_type((1, 3, 1, 2, 3))
    assert profile_a[shared] == frozenset({"ell"})
    assert profile_b[shared] == frozenset({"ell"})
    assert profile_a[separating] == frozenset({"ellp"})
    assert separating not in profile_b  # absent key means the empty set


def test_profile_of_singleton_configuration():
    sync = SyncConfig(("qa", (5,)), frozenset({("ell", (7, 7))}))
    profile = type_profile(sync, (7, 7))
    assert profile == {equality_type((7, 7, 7, 7, 5)): frozenset({"ell"})}


def test_profile_requires_present_valuation(profile_sync_small):
    with pytest.raises(ValueError):
        type_profile(profile_sync_small, (9, 9))


def test_indistinguishable_flips_with_the_extra_state(profile_sync_small, profile_sync_large):
    a, b = (1, 3), (2, 3)
    assert not indistinguishable(profile_sync_small, a, b)
    assert indistinguishable(profile_sync_large, a, b)


def test_indistinguishable_is_reflexive(profile_sync_small):
    assert indistinguishable(profile_sync_small, (1, 3), (1, 3))


def _distinct_valuations(sync):
    return sorted({valuation for _, valuation in sync.b_config}, key=val_key)


@pytest.mark.parametrize("seed", range(30))
def test_indistinguishable_is_an_equivalence(seed):
    rng = random.Random(4000 + seed)
    a = random_automaton(rng, alphabet=("a",))
    b = random_automaton(rng, alphabet=("a",))
    sync = random_sync(rng, a, b)
    sync, _, _ = padded_sync(rng, sync, b.register_count)
    valuations = _distinct_valuations(sync)
    relation = {
        (u, v): indistinguishable(sync, u, v)
        for u in valuations
        for v in valuations
    }
    for u in valuations:
        assert relation[(u, u)]
        for v in valuations:
            assert relation[(u, v)] == relation[(v, u)]
            for w in valuations:
                if relation[(u, v)] and relation[(v, w)]:
                    assert relation[(u, w)]


@pytest.mark.parametrize("seed", range(30))
def test_indistinguishable_pairs_have_equivalent_slices(seed):
    rng = random.Random(5000 + seed)
    a = random_automaton(rng, alphabet=("a",))
    b = random_automaton(rng, alphabet=("a",))
    sync, keep, drop = padded_sync(rng, random_sync(rng, a, b), b.register_count)
    valuations = _distinct_valuations(sync)
    found = 0
    for u, v in itertools.combinations(valuations, 2):
        if not indistinguishable(sync, u, v):
            continue
        found += 1
        mapping = {x: y for x, y in zip(u, v) if x is not None}
        images = list(mapping.values())
        assert None not in images
        assert len(set(images)) == len(images)  # the pairing is injective
        mapping[None] = None
        slice_u = frozenset(s for s in sync.b_config if s[1] == u)
        slice_v = frozenset(s for s in sync.b_config if s[1] == v)
        assert apply_iso(mapping, slice_u) == slice_v
        assert brute_force_equivalent(slice_u, slice_v) is not None
    if keep != drop:
        assert found >= 1  # the padding added an indistinguishable pair


# ---------------------------------------------------------------------------
# canonical states


def test_canonical_valuation_first_occurrence():
    renamed, renaming = canonical_valuation((5, None, 5, 7))
    assert renamed == (1, None, 1, 2)
    assert renaming == {5: 1, 7: 2}


def test_canonical_state_keeps_location():
    assert canonical_state(("p", (9,)))[0] == ("p", (1,))


# ---------------------------------------------------------------------------
# emptiness


def test_emptiness_shortest_witness(last_repeat):
    # brute-force: no accepted word of length < 2, one normalized accepted
    # word of length 2
    accepted = [
        w for w in enumerate_normalized_words(last_repeat.alphabet, 2)
        if membership(last_repeat, w)
    ]
    assert accepted == [(("s", 1), ("s", 1))]
    assert emptiness(last_repeat) == (("s", 1), ("s", 1))


def test_emptiness_without_accepting_locations():
    aut = RegisterAutomaton(frozenset({"a"}), 0, frozenset({"p"}), "p", frozenset(), ())
    assert emptiness(aut) is None


def test_emptiness_with_accepting_initial():
    aut = RegisterAutomaton(frozenset({"a"}), 0, frozenset({"p"}), "p", frozenset({"p"}), ())
    assert emptiness(aut) == ()


@pytest.mark.parametrize("seed", range(40))
def test_emptiness_agrees_with_enumeration(seed):
    rng = random.Random(6000 + seed)
    aut = random_automaton(rng, alphabet=("a", "b"))
    witness = emptiness(aut)
    accepted_lengths = [
        len(w) for w in enumerate_normalized_words(aut.alphabet, 5) if membership(aut, w)
    ]
    if witness is None:
        assert not accepted_lengths
    else:
        assert membership(aut, witness)
        if accepted_lengths:
            assert len(witness) == accepted_lengths[0]
        else:
            assert len(witness) > 5


# ---------------------------------------------------------------------------
# unambiguity


def test_last_repeat_is_unambiguous(last_repeat):
    assert check_unambiguous(last_repeat).unambiguous


def test_demo_ura_is_unambiguous(demo_ura):
    assert check_unambiguous(demo_ura).unambiguous


def test_parallel_accepting_locations_are_ambiguous():
    aut = RegisterAutomaton(
        frozenset({"a"}), 0, frozenset({"p", "q", "r"}), "p", frozenset({"q", "r"}),
        (
            # two always-enabled edges to distinct accepting locations
            Edge("p", "a", TRUE, frozenset(), "q"),
            Edge("p", "a", TRUE, frozenset(), "r"),
        ),
    )
    result = check_unambiguous(aut)
    assert not result.unambiguous
    assert result.witness is not None and len(result.witness) == 1
    assert count_accepting_runs(aut, result.witness) >= 2


def test_parallel_edges_to_one_location_are_not_ambiguous():
    aut = RegisterAutomaton(
        frozenset({"a"}), 1, frozenset({"p", "q"}), "p", frozenset({"q"}),
        (
            # same endpoints and same resulting state: a single run
            Edge("p", "a", TRUE, frozenset({0}), "q"),
            Edge("p", "a", Not(EqReg(0)), frozenset({0}), "q"),
        ),
    )
    assert check_unambiguous(aut).unambiguous


@pytest.mark.parametrize("seed", range(60))
def test_unambiguity_agrees_with_run_counting(seed):
    rng = random.Random(7000 + seed)
    aut = random_automaton(rng, alphabet=("a",) if seed % 2 else ("a", "b"))
    result = check_unambiguous(aut)
    if result.unambiguous:
        for w in enumerate_normalized_words(aut.alphabet, 4):
            assert count_accepting_runs(aut, w) <= 1
    else:
        assert count_accepting_runs(aut, result.witness) >= 2
        # breadth-first search returns a shortest witness
        shorter = [
            w for w in enumerate_normalized_words(aut.alphabet, len(result.witness) - 1)
            if count_accepting_runs(aut, w) >= 2
        ]
        assert not shorter
