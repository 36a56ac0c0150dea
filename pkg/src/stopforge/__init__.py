"""stopforge: corpus statistics for building and evaluating stop-word lists."""

from .corpus import Corpus, Document, TokenizerConfig, load_corpus, read_corpus, tokenize
from .errors import DataError, StopforgeError
from .evaluation import (
    EvalReport,
    ReferenceList,
    SweepRow,
    best_cutoff,
    evaluate,
    load_reference,
    restrict_to_vocabulary,
    sweep_report,
)
from .measures import (
    KeywordSet,
    ScoreTable,
    TermStats,
    build_score_table,
    compute_counts,
    idf,
    log_tf_idf,
    rake_frequencies,
    rake_score,
    tcf,
    tf_idf,
)
from .stoplist import MEASURES, MeasureSpec, StopList, SweepConfig, generate, generate_top_fraction, sweep

__version__ = "0.1.0"
