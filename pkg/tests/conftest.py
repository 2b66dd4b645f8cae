import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

import clockoid as ck

REPO_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
CORPUS_DIR = os.path.join(REPO_ROOT, "corpus")


@pytest.fixture(scope="session")
def corpus_dir():
    return CORPUS_DIR


@pytest.fixture(scope="session")
def corpus_entries():
    return ck.load_corpus(CORPUS_DIR)


@pytest.fixture(scope="session")
def corpus_diagrams(corpus_entries):
    return {e.name: e.diagram for e in corpus_entries}


@pytest.fixture
def trivial():
    return ck.parse_kdf("kdf 1\nstar tail\n", name="trivial")


@pytest.fixture
def curl():
    return ck.parse_kdf("kdf 1\nx 1 0 1 1 2\nstar tail\n", name="curl")


@pytest.fixture
def fig1():
    return ck.parse_kdf("kdf 1\nx 1 0 3 1 2\nx 2 3 2 4 1\nstar tail\n", name="fig1")
