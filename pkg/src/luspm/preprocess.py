"""Preprocessing shared by the shrinkage and extension miners.

Each database sequence's pattern is first cleaned by the early utility pruning
step (drop positions whose column sum over the pattern's full-database chain
exceeds the threshold), then reduced to the maximal set of patterns none of
which is a subsequence of another. Those survivors are the mining roots.
"""

from __future__ import annotations

from dataclasses import dataclass

from .occurrence import (
    BitIndex,
    SUChain,
    UtilityCounter,
    get_utility_chain,
    is_subsequence,
)
from .seqdb import Pattern, QSequenceDatabase


@dataclass(frozen=True)
class MaxNonConSeqSet:
    """Antichain of root patterns under the subsequence relation."""

    roots: tuple[Pattern, ...]

    def __post_init__(self):
        for i, a in enumerate(self.roots):
            for j, b in enumerate(self.roots):
                if i != j and is_subsequence(a, b):
                    raise ValueError(f"root {a} is contained in root {b}")


def eups_prune(pattern: Pattern, chain: SUChain, min_util) -> tuple[Pattern, SUChain]:
    """Remove every position whose column sum exceeds ``min_util``.

    Columns are judged against the original chain in a single pass; the
    returned chain has the same columns deleted from every row.
    """
    keep = [q for q in range(chain.length) if chain.column_sum(q) <= min_util]
    pruned = tuple(pattern[q] for q in keep)
    rows = tuple(tuple(row[q] for q in keep) for row in chain.rows)
    return pruned, SUChain(len(keep), rows)


def build_max_non_con_seq_set(
    db: QSequenceDatabase,
    index: BitIndex | None,
    min_util,
    counter: UtilityCounter | None = None,
    chain_getter=None,
) -> MaxNonConSeqSet:
    """Prune each sequence's pattern, drop empties and duplicates, then keep
    only patterns that are not subsequences of another retained pattern.

    ``chain_getter`` lets callers route chain construction through a shared
    memo so the counter sees each distinct pattern once.
    """
    candidates: list[Pattern] = []
    seen: set[Pattern] = set()
    for seq in db.sequences:
        pattern = seq.items
        if chain_getter is not None:
            chain = chain_getter(pattern)
        else:
            chain = get_utility_chain(pattern, db, index, counter)
        pruned, _ = eups_prune(pattern, chain, min_util)
        if pruned and pruned not in seen:
            seen.add(pruned)
            candidates.append(pruned)
    roots = [
        p
        for p in candidates
        if not any(q != p and is_subsequence(p, q) for q in candidates)
    ]
    return MaxNonConSeqSet(tuple(roots))
