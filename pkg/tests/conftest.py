import pytest

from credaldyn import gen_random_invariant

CORPUS_SIZE = 200


def build_corpus(size=CORPUS_SIZE):
    """Seeded random invariant systems with n <= 8 and at most 6 canonical
    generators (larger draws are skipped deterministically)."""
    corpus = []
    seed = 0
    while len(corpus) < size:
        n = 2 + seed % 7
        k = 1 + seed % 3
        T, C = gen_random_invariant(n, k, seed)
        if len(C.generators) <= 6:
            corpus.append((seed, T, C))
        seed += 1
    return corpus


@pytest.fixture(scope="session")
def corpus():
    return build_corpus()


@pytest.fixture(scope="session")
def small_corpus():
    return build_corpus(40)
