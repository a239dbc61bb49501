"""Shared fixtures: a deterministic corpus of small valid Seifert matrices."""

import random

import pytest

from dihedral import SeifertMatrix, knot_determinant

CORPUS_SEED = 20260819
CORPUS_SIZE = 220

_corpus_cache = None


def build_corpus():
    """Rejection-sample genus 1 and 2 matrices with entries in [-2, 2].

    Kept: det(V - V^T) = 1 and knot determinant <= 2000. Seeded, so
    every run sees the same corpus.
    """
    global _corpus_cache
    if _corpus_cache is not None:
        return _corpus_cache
    rng = random.Random(CORPUS_SEED)
    out = []
    while len(out) < CORPUS_SIZE:
        size = rng.choice((2, 4))
        rows = [[rng.randint(-2, 2) for _ in range(size)] for _ in range(size)]
        try:
            v = SeifertMatrix(rows)
        except ValueError:
            continue
        if knot_determinant(v) <= 2000:
            out.append(v)
    _corpus_cache = tuple(out)
    return _corpus_cache


@pytest.fixture(scope="session")
def corpus():
    return build_corpus()
