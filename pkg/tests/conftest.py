import pytest

from corpus import build_corpus, build_negative


@pytest.fixture(scope="session")
def corpus():
    return build_corpus()


@pytest.fixture(scope="session")
def negatives():
    return build_negative()
