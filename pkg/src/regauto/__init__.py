"""Register automata over data words: models, semantics, and decision
procedures for membership, emptiness, unambiguity, containment against an
unambiguous specification automaton, universality, and equivalence."""

from .analysis import (
    CompleteType,
    UnambiguityResult,
    canonical_state,
    canonical_valuation,
    check_unambiguous,
    emptiness,
    equality_type,
    indistinguishable,
    type_profile,
)
from .containment import (
    AbstractConfig,
    AlphabetMismatchError,
    AmbiguousAutomatonError,
    COLLAPSE_FULL,
    COLLAPSE_OFF,
    COLLAPSE_TYPES,
    ContainmentOptions,
    EquivalenceVerdict,
    NodeBudgetExceededError,
    Verdict,
    abstract_of,
    check_containment,
    check_equivalent,
    check_universal,
    collapse_max,
    collapse_once,
    initial_sync,
    is_bad,
    materialize,
    sync_successors,
    universal_automaton,
)
from .core import (
    And,
    Configuration,
    DataWord,
    Edge,
    EqReg,
    Guard,
    GuardTrue,
    Letter,
    Not,
    PartialIso,
    RegisterAutomaton,
    State,
    SyncConfig,
    TRUE,
    Valuation,
    accepts_config,
    apply_iso,
    canonical_config,
    configs_equivalent,
    data_of_config,
    data_of_sync,
    data_of_valuation,
    data_of_word,
    eval_guard,
    initial_config,
    membership,
    normalize_word,
    reachable_config,
    step_state,
    succ_config,
    succ_word,
    word_labels,
)
from .format import (
    FormatError,
    guard_to_text,
    load_automaton,
    parse_automaton,
    parse_guard,
    parse_word,
    serialize_automaton,
    word_to_text,
)
from .oracle import (
    count_accepting_runs,
    enumerate_normalized_words,
    find_witness,
    oracle_containment,
)

__version__ = "0.1.0"
