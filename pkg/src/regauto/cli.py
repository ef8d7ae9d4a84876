"""Command-line interface.

Exit codes: 0 when the queried property holds (member / empty / unambiguous
/ contained / universal / equivalent, or no bounded counterexample), 1 when
it fails (a witness is printed when available), 2 on usage or input errors.

With the global --json flag every command emits one machine-readable record
with the fields verdict, witness, witness_verified, nodes_explored,
peak_valuations and elapsed_ms; fields that do not apply are null.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .analysis import check_unambiguous, emptiness
from .containment import (
    COLLAPSE_FULL,
    COLLAPSE_OFF,
    AlphabetMismatchError,
    AmbiguousAutomatonError,
    ContainmentOptions,
    NodeBudgetExceededError,
    Verdict,
    check_containment,
    check_equivalent,
    check_universal,
)
from .core import membership
from .format import FormatError, load_automaton, parse_word, word_to_text
from .oracle import oracle_containment


def _record(verdict, witness=None, witness_verified=None, nodes=None, peak=None, **extra):
    record = {
        "verdict": verdict,
        "witness": None if witness is None else word_to_text(witness),
        "witness_verified": witness_verified,
        "nodes_explored": nodes,
        "peak_valuations": peak,
    }
    record.update(extra)
    return record


def _witness_line(witness) -> str:
    if witness is None:
        return "witness: (none found within the search cap)"
    if not witness:
        return 'witness: "" (the empty word)'
    return f"witness: {word_to_text(witness)}"


def _cmd_validate(args):
    aut = load_automaton(args.file)
    summary = (
        f"ok: {len(aut.locations)} locations, {aut.register_count} registers, "
        f"{len(aut.edges)} edges, alphabet {{{', '.join(sorted(aut.alphabet))}}}"
    )
    return 0, _record("valid"), [summary]


def _cmd_member(args):
    aut = load_automaton(args.file)
    word = parse_word(args.word)
    if membership(aut, word):
        return 0, _record("member"), ["member"]
    return 1, _record("not-member"), ["not a member"]


def _cmd_empty(args):
    aut = load_automaton(args.file)
    witness = emptiness(aut)
    if witness is None:
        return 0, _record("empty"), ["empty"]
    return (
        1,
        _record("nonempty", witness, witness_verified=membership(aut, witness)),
        ["not empty", _witness_line(witness)],
    )


def _cmd_unambiguous(args):
    aut = load_automaton(args.file)
    result = check_unambiguous(aut)
    if result.unambiguous:
        return 0, _record("unambiguous"), ["unambiguous"]
    return (
        1,
        _record("ambiguous", result.witness, witness_verified=True),
        ["ambiguous", _witness_line(result.witness)],
    )


def _containment_record(name_holds: str, name_fails: str, verdict: Verdict):
    if verdict.contained:
        return 0, _record(
            name_holds, nodes=verdict.nodes_explored, peak=verdict.peak_valuations
        ), [name_holds]
    record = _record(
        name_fails,
        verdict.witness,
        verdict.witness_verified,
        verdict.nodes_explored,
        verdict.peak_valuations,
    )
    return 1, record, [name_fails.replace("-", " "), _witness_line(verdict.witness)]


def _cmd_contains(args):
    a = load_automaton(args.a)
    b = load_automaton(args.b)
    options = ContainmentOptions(
        witness_cap=args.witness_cap,
        node_budget=args.node_budget,
        collapse=COLLAPSE_OFF if args.no_collapse else COLLAPSE_FULL,
        check_b_unambiguous=not args.unsafe_skip_ura_check,
    )
    return _containment_record("contained", "not-contained", check_containment(a, b, options))


def _cmd_universal(args):
    b = load_automaton(args.file)
    return _containment_record("universal", "not-universal", check_universal(b))


def _cmd_equivalent(args):
    a = load_automaton(args.a)
    b = load_automaton(args.b)
    result = check_equivalent(a, b)
    nodes = result.forward.nodes_explored + result.backward.nodes_explored
    peak = max(result.forward.peak_valuations, result.backward.peak_valuations)
    if result.equivalent:
        return 0, _record("equivalent", nodes=nodes, peak=peak, failing_direction=None), [
            "equivalent"
        ]
    if not result.forward.contained:
        direction, failing = "first-not-in-second", result.forward
    else:
        direction, failing = "second-not-in-first", result.backward
    record = _record(
        "not-equivalent",
        failing.witness,
        failing.witness_verified,
        nodes,
        peak,
        failing_direction=direction,
    )
    return 1, record, [
        f"not equivalent ({direction.replace('-', ' ')})",
        _witness_line(failing.witness),
    ]


def _cmd_oracle_contains(args):
    a = load_automaton(args.a)
    b = load_automaton(args.b)
    witness = oracle_containment(a, b, args.max_len)
    if witness is None:
        return 0, _record("no-counterexample"), [
            f"no counterexample of length at most {args.max_len}"
        ]
    return (
        1,
        _record("counterexample", witness, witness_verified=True),
        ["counterexample found", _witness_line(witness)],
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="regauto",
        description="Decision procedures for register automata over data words.",
    )
    parser.add_argument(
        "--json", action="store_true", help="emit one machine-readable result record"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("validate", help="check an automaton file")
    p.add_argument("file")
    p.set_defaults(handler=_cmd_validate)

    p = commands.add_parser("member", help="test whether a word is accepted")
    p.add_argument("file")
    p.add_argument("--word", required=True, help='word as "label:datum ..." tokens')
    p.set_defaults(handler=_cmd_member)

    p = commands.add_parser("empty", help="test language emptiness")
    p.add_argument("file")
    p.set_defaults(handler=_cmd_empty)

    p = commands.add_parser("unambiguous", help="test unambiguity")
    p.add_argument("file")
    p.set_defaults(handler=_cmd_unambiguous)

    p = commands.add_parser("contains", help="test containment of A in B (B unambiguous)")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--witness-cap", type=int, default=8, metavar="N")
    p.add_argument("--node-budget", type=int, default=1_000_000, metavar="N")
    p.add_argument(
        "--no-collapse",
        action="store_true",
        help="disable collapsing (exploration bounded only by the node budget)",
    )
    p.add_argument(
        "--unsafe-skip-ura-check",
        action="store_true",
        help="skip the unambiguity check on B; NotContained verdicts become unsound",
    )
    p.set_defaults(handler=_cmd_contains)

    p = commands.add_parser("universal", help="test universality (B unambiguous)")
    p.add_argument("file")
    p.set_defaults(handler=_cmd_universal)

    p = commands.add_parser("equivalent", help="test equivalence (both unambiguous)")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(handler=_cmd_equivalent)

    p = commands.add_parser(
        "oracle-contains", help="brute-force containment check up to a word length"
    )
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--max-len", type=int, required=True, metavar="L")
    p.set_defaults(handler=_cmd_oracle_contains)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    started = time.perf_counter()
    try:
        code, record, lines = args.handler(args)
    except AmbiguousAutomatonError as error:
        witness = "" if error.witness is None else word_to_text(error.witness)
        print(f"error: {error}; ambiguity witness: {witness!r}", file=sys.stderr)
        return 2
    except (FormatError, AlphabetMismatchError, NodeBudgetExceededError, ValueError) as error:
        print(f"error: {error}", file=sys.stderr)
        return 2
    except OSError as error:
        print(f"error: {error}", file=sys.stderr)
        return 2
    record["elapsed_ms"] = round((time.perf_counter() - started) * 1000.0, 3)
    if args.json:
        print(json.dumps(record))
    else:
        for line in lines:
            print(line)
    return code


if __name__ == "__main__":
    sys.exit(main())
