"""Shared fixtures: the six-sequence reference database and helpers."""

from __future__ import annotations

import random

import pytest

from luspm import (
    ExternalUtilityTable,
    QItem,
    QSequence,
    QSequenceDatabase,
    generate_synthetic,
)

# Items a..g are encoded 1..7 throughout the reference fixtures.
A, B, C, D, E, F, G = range(1, 8)

REFERENCE_SEQUENCES = (
    QSequence(1, (QItem(A, 1), QItem(B, 2), QItem(C, 1), QItem(A, 2),
                  QItem(B, 3), QItem(D, 3), QItem(A, 3))),
    QSequence(2, (QItem(G, 1), QItem(A, 1), QItem(B, 2), QItem(C, 2),
                  QItem(D, 1))),
    QSequence(3, (QItem(E, 2), QItem(F, 2), QItem(A, 1), QItem(B, 2),
                  QItem(E, 2))),
    QSequence(4, (QItem(F, 1), QItem(E, 2), QItem(A, 2), QItem(B, 2),
                  QItem(A, 2), QItem(B, 2))),
    QSequence(5, (QItem(D, 2), QItem(A, 1), QItem(C, 3), QItem(D, 2))),
    QSequence(6, (QItem(C, 1), QItem(A, 2), QItem(D, 3), QItem(A, 3))),
)

REFERENCE_EXTERNALS = ExternalUtilityTable(
    {A: 1, B: 3, C: 1, D: 2, E: 1, F: 3, G: 3}
)


@pytest.fixture
def ref_db() -> QSequenceDatabase:
    """Reference database with its non-uniform external utility table."""
    return QSequenceDatabase(REFERENCE_SEQUENCES, REFERENCE_EXTERNALS)


@pytest.fixture
def ones_db() -> QSequenceDatabase:
    """Reference sequences with every external utility set to one."""
    table = ExternalUtilityTable.uniform(range(1, 8))
    return QSequenceDatabase(REFERENCE_SEQUENCES, table)


def random_database(seed: int, max_seqs: int = 8, max_len: int = 8,
                    alphabet: int = 6, max_qty: int = 4,
                    max_ext: int = 4) -> QSequenceDatabase:
    """Small random database for oracle-equivalence suites."""
    rng = random.Random(seed)
    return generate_synthetic(
        num_seqs=rng.randint(1, max_seqs),
        alphabet_size=rng.randint(1, alphabet),
        min_len=1,
        max_len=rng.randint(1, max_len),
        max_quantity=max_qty,
        max_external=max_ext,
        seed=seed,
    )
