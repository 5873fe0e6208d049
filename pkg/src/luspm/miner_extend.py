"""Extension miner: grow an accumulated prefix along each root's positions.

At every cursor position the search either drops the position (column deleted
from the carried chain) or appends its item to the accumulated pattern. An
appended prefix is admitted only while its restricted chain sum (the lower
bound LBS) stays within the threshold; once it exceeds it, nothing above that
prefix inside this root can be a result, so the whole subtree is cut.
"""

from __future__ import annotations

import sys
import threading
from concurrent.futures import ThreadPoolExecutor

from .chains import ChainStore, TaggedRows, column_bound, restrict_rows
from .miner_base import LuspRecord, LuspResult
from .occurrence import UtilityCounter, build_bit_index
from .preprocess import build_max_non_con_seq_set
from .seqdb import MiningConfig, Pattern, QSequenceDatabase, resolve_min_util
from .shadow import MiningShadow

RECURSION_HEADROOM = 100_000


class _ExtendMiner:
    def __init__(
        self,
        db: QSequenceDatabase,
        cfg: MiningConfig,
        counter: UtilityCounter | None,
        shadow: MiningShadow | None,
        threads: int,
    ):
        self.db = db
        self.min_util = resolve_min_util(cfg, db)
        self.max_len = cfg.max_len
        self.store = ChainStore(db, build_bit_index(db), counter)
        self.shadow = shadow
        self.threads = max(1, threads)
        self._sink: dict[Pattern, tuple] = {}
        self._sink_lock = threading.Lock()

    def run(self) -> LuspResult:
        roots = build_max_non_con_seq_set(
            self.db, self.store.index, self.min_util, chain_getter=self.store.chain
        ).roots
        limit = max(sys.getrecursionlimit(), RECURSION_HEADROOM)
        sys.setrecursionlimit(limit)
        if self.threads == 1:
            for root in roots:
                self._mine_root(root)
        else:
            with ThreadPoolExecutor(max_workers=self.threads) as pool:
                list(pool.map(self._mine_root, roots))
        records = [LuspRecord(p, u, s) for p, (u, s) in self._sink.items()]
        return LuspResult.from_records(records, self.min_util, self.max_len)

    def _len_ok(self, pattern: Pattern) -> bool:
        return self.max_len is None or len(pattern) <= self.max_len

    def _record(self, pattern: Pattern, utility, support: int) -> None:
        with self._sink_lock:
            self._sink.setdefault(pattern, (utility, support))

    def _mine_root(self, root: Pattern) -> None:
        self._extension(root, self.store.tagged(root), 0)

    def _extension(self, s: Pattern, rows: TaggedRows, q_len: int) -> None:
        p = q_len
        if p >= len(s):
            return
        # Drop the cursor position for the whole subtree.
        self._extension(
            s[:p] + s[p + 1 :],
            restrict_rows(rows, [c for c in range(len(s)) if c != p]),
            q_len,
        )
        # Append it to the accumulated prefix.
        lbs = column_bound(rows, range(p + 1))
        if lbs > self.min_util:
            if self.shadow is not None:
                self.shadow.ebisps_cut(s[: p + 1], s[p + 1 :])
            return
        self._extension(s, rows, p + 1)
        q = s[: p + 1]
        if self._len_ok(q):
            utility, support = self.store.evaluate(q)
            if utility <= self.min_util:
                self._record(q, utility, support)


def mine_extend(
    db: QSequenceDatabase,
    cfg: MiningConfig,
    counter: UtilityCounter | None = None,
    shadow: MiningShadow | None = None,
    threads: int = 1,
) -> LuspResult:
    """Mine the complete LUSP set by extension; output equals the baseline's."""
    return _ExtendMiner(db, cfg, counter, shadow, threads).run()
