import functools
from pathlib import Path

import pytest

from filterlab.pcgroup import parse_pcg_file, parse_pcgroup

ROOT = Path(__file__).resolve().parent.parent
CORPUS = ROOT / "corpus"


@functools.lru_cache(maxsize=None)
def load(name: str):
    """Load a corpus group by stem (cached per test session)."""
    hits = list(CORPUS.glob(f"**/{name}.pcg"))
    assert len(hits) == 1, f"corpus lookup for {name}: {hits}"
    return parse_pcg_file(hits[0])


@functools.lru_cache(maxsize=None)
def corpus_paths():
    return tuple(sorted(CORPUS.glob("**/*.pcg")))


@pytest.fixture(scope="session")
def d8():
    return load("d8")


@pytest.fixture(scope="session")
def q8():
    return load("q8")


@pytest.fixture(scope="session")
def h27():
    return load("h27")


@pytest.fixture(scope="session")
def corpus_groups():
    return {p.stem: parse_pcg_file(p) for p in corpus_paths()}
