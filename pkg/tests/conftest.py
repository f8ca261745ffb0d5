"""Shared fixtures.

Corpus complexes are parsed once per test session and shared, so the
per-complex caches (homology, pairings, characteristic classes) warm up
exactly once no matter how many tests touch the same space.
"""

import pytest

from psw.cli import corpus_entries
from psw.complex_model import parse_complex

_PARSED = {}


def _load(name: str):
    if name not in _PARSED:
        for entry_name, corpus_file, _golden in corpus_entries():
            if entry_name == name:
                _PARSED[name] = parse_complex(corpus_file.read_text(),
                                              default_name=name)
                break
        else:
            raise KeyError(f"no corpus entry named {name!r}")
    return _PARSED[name]


@pytest.fixture(scope="session")
def corpus():
    """Callable fixture: ``corpus("s4")`` returns the parsed complex."""
    return _load
