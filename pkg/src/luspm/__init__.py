"""Low-utility sequential pattern mining.

Three interchangeable miners over a quantitative sequence database: an
exhaustive baseline, a shrinkage search and an extension search, all
producing the identical set of patterns whose occurrence-summed utility is
positive and at most the threshold.
"""

from .errors import (
    CandidateCapExceeded,
    EmbeddingCapExceeded,
    LuspmError,
    ParseError,
    UtilityTableError,
)
from .harness import (
    MetricsReport,
    SweepSpec,
    dataset_fingerprint,
    run_once,
    run_sweep,
    sample_database,
)
from .miner_base import (
    LuspRecord,
    LuspResult,
    enumerate_all_subsequences,
    estimate_utility_computations,
    mine_baseline,
)
from .miner_extend import mine_extend
from .miner_shrink import mine_shrink
from .occurrence import (
    BitIndex,
    Embedding,
    SUChain,
    UtilityCounter,
    build_bit_index,
    compute_utility,
    enumerate_embeddings,
    get_utility_chain,
    is_subsequence,
    support,
)
from .preprocess import MaxNonConSeqSet, build_max_non_con_seq_set, eups_prune
from .seqdb import (
    ExternalUtilityTable,
    MiningConfig,
    Pattern,
    QItem,
    QSequence,
    QSequenceDatabase,
    database_utility,
    generate_synthetic,
    parse_spmf,
    parse_utility_table,
    resolve_min_util,
    serialize_spmf,
    serialize_utility_table,
)
from .shadow import MiningShadow

__all__ = [name for name in dir() if not name.startswith("_")]
