import json
import pathlib

import pytest

from regauto import SyncConfig, load_automaton, parse_automaton

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def last_repeat():
    """One-register unambiguous automaton over {s}: accepts exactly the
    words whose final datum occurred somewhere earlier."""
    return load_automaton(FIXTURES / "last_repeat.json")


@pytest.fixture(scope="session")
def demo_nra():
    """Non-deterministic automaton accepting the length-4 words whose second
    datum differs from the first."""
    return load_automaton(FIXTURES / "demo_nra.json")


@pytest.fixture(scope="session")
def demo_ura():
    """Unambiguous automaton whose language includes everything demo_nra
    accepts; the containment demo partner."""
    return load_automaton(FIXTURES / "demo_ura.json")


@pytest.fixture(scope="session")
def demo_ura_doc():
    return json.loads((FIXTURES / "demo_ura.json").read_text())


def drop_edges(document, source, target):
    """Copy of an automaton document without the source->target edges."""
    doc = dict(document)
    doc["edges"] = [
        edge for edge in document["edges"]
        if not (edge["from"] == source and edge["to"] == target)
    ]
    return parse_automaton(doc)


@pytest.fixture(scope="session")
def profile_sync_small():
    """Synchronized configuration ((qa, 3), {(ell,1,3), (ell,2,3), (ellp,1,2)}):
    the valuations (1,3) and (2,3) are distinguishable here."""
    return SyncConfig(
        ("qa", (3,)),
        frozenset({("ell", (1, 3)), ("ell", (2, 3)), ("ellp", (1, 2))}),
    )


@pytest.fixture(scope="session")
def profile_sync_large(profile_sync_small):
    """The same configuration plus (ellp,2,1), which makes (1,3) and (2,3)
    indistinguishable."""
    return SyncConfig(
        profile_sync_small.a_state,
        profile_sync_small.b_config | {("ellp", (2, 1))},
    )
