"""Embedding enumeration, sequence-utility chains and utility computation.

Every miner funnels through this module: a pattern's utility is the sum, over
all of its embeddings in the database, of quantity times external utility at
each matched position. The per-pattern rows of those position utilities form
the sequence-utility chain.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import EmbeddingCapExceeded
from .seqdb import Pattern, QSequence, QSequenceDatabase


@dataclass(frozen=True)
class Embedding:
    """One occurrence of a pattern: strictly increasing positions, one per
    pattern element."""

    sid: int
    positions: tuple[int, ...]


@dataclass(frozen=True)
class SUChain:
    """Per-embedding utility rows for one pattern across the database.

    Row p, entry q is quantity times external utility at the q-th matched
    position of embedding p. The number of rows equals the pattern's support.
    """

    length: int
    rows: tuple[tuple, ...]

    def __post_init__(self):
        for row in self.rows:
            if len(row) != self.length:
                raise ValueError("chain row width must equal pattern length")

    @property
    def support(self) -> int:
        return len(self.rows)

    def column_sum(self, q: int) -> int | Fraction:
        return sum(row[q] for row in self.rows)


class UtilityCounter:
    """Counts full-chain constructions during a mining run.

    Increments are lock-protected so concurrent miners cannot lose updates.
    """

    def __init__(self):
        self._count = 0
        self._lock = threading.Lock()

    @property
    def count(self) -> int:
        return self._count

    def increment(self, n: int = 1) -> None:
        with self._lock:
            self._count += n


@dataclass(frozen=True)
class BitIndex:
    """Per-sequence presence masks and position lists for each item.

    Bit j of ``masks[sid][item]`` is set iff position j of that sequence holds
    the item. Purely an accelerator: every result must be identical with
    ``index=None``.
    """

    masks: dict[int, dict[int, int]] = field(default_factory=dict)
    positions: dict[int, dict[int, tuple[int, ...]]] = field(default_factory=dict)

    def item_positions(self, seq: QSequence, item: int) -> tuple[int, ...]:
        return self.positions[seq.sid].get(item, ())

    def contains_all(self, seq: QSequence, pattern: Pattern) -> bool:
        masks = self.masks[seq.sid]
        return all(item in masks for item in pattern)


def build_bit_index(db: QSequenceDatabase) -> BitIndex:
    masks: dict[int, dict[int, int]] = {}
    positions: dict[int, dict[int, tuple[int, ...]]] = {}
    for seq in db.sequences:
        m: dict[int, int] = {}
        p: dict[int, list[int]] = {}
        for j, e in enumerate(seq.elements):
            m[e.item] = m.get(e.item, 0) | (1 << j)
            p.setdefault(e.item, []).append(j)
        masks[seq.sid] = m
        positions[seq.sid] = {item: tuple(v) for item, v in p.items()}
    return BitIndex(masks, positions)


def is_subsequence(shorter: Pattern, longer: Pattern) -> bool:
    """Greedy left-to-right containment check (order-preserving)."""
    it = iter(longer)
    return all(item in it for item in shorter)


def _positions_of(seq: QSequence, item: int, index: BitIndex | None) -> tuple[int, ...]:
    if index is not None:
        return index.item_positions(seq, item)
    return tuple(j for j, e in enumerate(seq.elements) if e.item == item)


def enumerate_embeddings(
    pattern: Pattern,
    seq: QSequence,
    index: BitIndex | None = None,
    max_embeddings: int | None = None,
) -> list[Embedding]:
    """All strictly increasing position assignments matching the pattern, in
    lexicographic position order."""
    if not pattern:
        raise ValueError("pattern must be non-empty")
    pos_lists = [_positions_of(seq, item, index) for item in pattern]
    if any(not pl for pl in pos_lists):
        return []
    out: list[Embedding] = []
    n = len(pattern)
    chosen = [0] * n

    def descend(depth: int, lo: int) -> None:
        for pos in pos_lists[depth]:
            if pos < lo:
                continue
            chosen[depth] = pos
            if depth + 1 == n:
                if max_embeddings is not None and len(out) >= max_embeddings:
                    raise EmbeddingCapExceeded(
                        f"pattern {pattern} exceeds {max_embeddings} embeddings in sid {seq.sid}"
                    )
                out.append(Embedding(seq.sid, tuple(chosen)))
            else:
                descend(depth + 1, pos + 1)

    descend(0, 0)
    return out


def get_utility_chain(
    pattern: Pattern,
    db: QSequenceDatabase,
    index: BitIndex | None = None,
    counter: UtilityCounter | None = None,
    max_embeddings: int | None = None,
) -> SUChain:
    """Build the pattern's sequence-utility chain over the whole database.

    Rows are grouped by sequence order, then embedding order. Counts as one
    utility computation.
    """
    if not pattern:
        raise ValueError("pattern must be non-empty")
    rows: list[tuple] = []
    for seq in db.sequences:
        if index is not None and not index.contains_all(seq, pattern):
            continue
        if not is_subsequence(pattern, seq.items):
            continue
        utils = db.sequence_utilities(seq)
        for emb in enumerate_embeddings(pattern, seq, index, max_embeddings):
            rows.append(tuple(utils[j] for j in emb.positions))
    if counter is not None:
        counter.increment()
    return SUChain(len(pattern), tuple(rows))


def compute_utility(chain: SUChain, prefix_len: int | None = None):
    """Sum of all chain entries, or of the first ``prefix_len`` entries of each
    row. On a pattern's own chain this is its true utility; on a chain
    inherited from a super-sequence it is the lower bound LBS."""
    if prefix_len is None:
        return sum(sum(row) for row in chain.rows)
    if prefix_len > chain.length:
        raise ValueError("prefix_len exceeds chain width")
    return sum(sum(row[:prefix_len]) for row in chain.rows)


def support(
    pattern: Pattern,
    db: QSequenceDatabase,
    index: BitIndex | None = None,
) -> int:
    """Total number of embeddings of the pattern across the database."""
    if not pattern:
        raise ValueError("pattern must be non-empty")
    total = 0
    for seq in db.sequences:
        if index is not None and not index.contains_all(seq, pattern):
            continue
        if not is_subsequence(pattern, seq.items):
            continue
        total += len(enumerate_embeddings(pattern, seq, index))
    return total
