import functools

import pytest

from amalgams.instances import load_corpus


@functools.lru_cache(maxsize=None)
def corpus():
    return load_corpus()


@pytest.fixture(scope="session")
def instances():
    return corpus()


def corpus_type(name):
    return corpus()[name].amalgam_type()
