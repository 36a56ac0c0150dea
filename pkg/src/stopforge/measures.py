"""Per-word corpus statistics: TF, DF, IDF, TF·IDF, log(TF)·IDF, successor
counts (the combinatorial factor, TCF) and RAKE adjacency/within frequencies.

All real-valued scores are derived from integer counts, so a table can be
rebuilt exactly from its counts alone.
"""

from __future__ import annotations

import csv
import io
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .corpus import DEFAULT_CONFIG, Corpus, TokenizerConfig, tokenize
from .errors import DataError

CSV_HEADER = (
    "word",
    "tf",
    "df",
    "idf",
    "tf_idf",
    "log_tf_idf",
    "tcf_unique",
    "tcf_total",
    "adjacency",
    "within",
)


@dataclass(frozen=True)
class TermStats:
    word: str
    tf: int
    df: int
    successor_types: int
    successor_tokens: int
    adjacency_freq: int = 0
    within_freq: int = 0


@dataclass(frozen=True)
class KeywordSet:
    phrases: tuple[tuple[str, ...], ...]

    def __post_init__(self):
        if any(len(p) == 0 for p in self.phrases):
            raise DataError("keyword phrases must be non-empty")

    @classmethod
    def from_phrases(cls, phrases: Iterable[str], config: TokenizerConfig = DEFAULT_CONFIG) -> "KeywordSet":
        """Tokenize raw phrases with the corpus tokenizer; phrases that normalize to nothing are dropped."""
        toks = (tuple(tokenize(p, config)) for p in phrases)
        return cls(tuple(t for t in toks if t))

    @classmethod
    def read(cls, source, config: TokenizerConfig = DEFAULT_CONFIG) -> "KeywordSet":
        """One phrase per line from a binary stream; ``#`` lines are comments."""
        lines = source.read().decode("utf-8").splitlines()
        return cls.from_phrases((ln for ln in lines if not ln.lstrip().startswith("#")), config)

    def __len__(self):
        return len(self.phrases)


# --- counting -----------------------------------------------------------------


@dataclass
class PartialCounts:
    """Mergeable integer counts for a chunk of documents."""

    tf: Counter
    df: Counter
    pairs: Counter

    def merge(self, other: "PartialCounts") -> "PartialCounts":
        return PartialCounts(self.tf + other.tf, self.df + other.df, self.pairs + other.pairs)


def count_chunk(token_lists: Iterable[Sequence[str]]) -> PartialCounts:
    tf, df, pairs = Counter(), Counter(), Counter()
    for toks in token_lists:
        tf.update(toks)
        df.update(set(toks))
        pairs.update(zip(toks, toks[1:]))
    return PartialCounts(tf, df, pairs)


def _chunks(seq, n):
    size = max(1, math.ceil(len(seq) / n))
    return [seq[i : i + size] for i in range(0, len(seq), size)]


def compute_counts(corpus: Corpus, workers: int = 1) -> "ScoreTable":
    """Count tf, df and successor statistics for every vocabulary word.

    Adjacent pairs ``(w_p, w_{p+1})`` are credited to ``w_p`` and never span
    document boundaries. With ``workers > 1`` documents are split into
    contiguous chunks counted in separate processes and merged; the merge is a
    sum of integer counters, so the result equals the sequential one exactly.
    """
    token_lists = [doc.tokens for doc in corpus.documents]
    if workers <= 1 or len(token_lists) < 2 * workers:
        counts = count_chunk(token_lists)
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(count_chunk, _chunks(token_lists, workers)))
        counts = parts[0]
        for part in parts[1:]:
            counts = counts.merge(part)

    succ_types, succ_tokens = Counter(), Counter()
    for (first, _), n in counts.pairs.items():
        succ_types[first] += 1
        succ_tokens[first] += n
    entries = {
        w: TermStats(w, counts.tf[w], counts.df[w], succ_types[w], succ_tokens[w])
        for w in counts.tf
    }
    return ScoreTable(corpus.doc_count, entries, source=corpus.name)


def _find_occurrences(tokens: Sequence[str], phrases_by_first: Mapping[str, list]) -> list[tuple[int, int]]:
    spans = []
    i, n = 0, len(tokens)
    while i < n:
        match = None
        for phrase in phrases_by_first.get(tokens[i], ()):
            if tuple(tokens[i : i + len(phrase)]) == phrase:
                match = phrase
                break
        if match is None:
            i += 1
        else:
            spans.append((i, i + len(match)))
            i += len(match)
    return spans


def rake_frequencies(corpus: Corpus, keywords: KeywordSet) -> dict[str, tuple[int, int]]:
    """Return ``{word: (adjacency_freq, within_freq)}`` for words with a non-zero count.

    Keyword occurrences are matched on exact tokens, left to right without
    overlap; at a given start position the longest phrase wins. Each token
    inside an occurrence adds one to its within count. The token just before
    and just after an occurrence each add one to their adjacency count, unless
    that token is itself inside an occurrence.
    """
    if len(keywords) == 0:
        raise DataError("keyword set is empty")
    by_first: dict[str, list] = {}
    # longest first, then input order (sort is stable)
    for phrase in sorted(dict.fromkeys(keywords.phrases), key=len, reverse=True):
        by_first.setdefault(phrase[0], []).append(phrase)

    adjacency, within = Counter(), Counter()
    for doc in corpus.documents:
        toks = doc.tokens
        spans = _find_occurrences(toks, by_first)
        if not spans:
            continue
        inside = np.zeros(len(toks), dtype=bool)
        for start, end in spans:
            inside[start:end] = True
            within.update(toks[start:end])
        for start, end in spans:
            for pos in (start - 1, end):
                if 0 <= pos < len(toks) and not inside[pos]:
                    adjacency[toks[pos]] += 1
    return {w: (adjacency[w], within[w]) for w in adjacency.keys() | within.keys()}


# --- scalar scores --------------------------------------------------------------


def idf(df: int, doc_count: int) -> float:
    """Natural-log inverse document frequency ``ln(doc_count / df)``."""
    if not 1 <= df <= doc_count:
        raise ValueError(f"idf requires 1 <= df <= doc_count, got df={df}, doc_count={doc_count}")
    return math.log(doc_count / df)


def tf_idf(tf: int, idf_value: float) -> float:
    if tf < 1:
        raise ValueError(f"tf must be >= 1, got {tf}")
    return tf * idf_value


def log_tf_idf(tf: int, idf_value: float) -> float:
    """Sublinear variant ``(1 + ln tf) * idf``."""
    if tf < 1:
        raise ValueError(f"tf must be >= 1, got {tf}")
    return (1.0 + math.log(tf)) * idf_value


def tcf(stats: TermStats, mode: str = "unique") -> int:
    """Combinatorial factor: distinct successors (``unique``) or successor occurrences (``total``)."""
    if mode == "unique":
        return stats.successor_types
    if mode == "total":
        return stats.successor_tokens
    raise ValueError(f"tcf mode must be 'unique' or 'total', got {mode!r}")


def rake_score(adjacency_freq: int, within_freq: int) -> int:
    # higher means more stop-word-like
    return adjacency_freq - within_freq


# --- table ----------------------------------------------------------------------


class ScoreTable:
    """Per-word counts plus derived scores for one corpus.

    ``words`` is sorted lexicographically; :meth:`column` returns numpy arrays
    aligned with it.
    """

    def __init__(self, doc_count: int, entries: Mapping[str, TermStats], source: str = "<corpus>"):
        self.doc_count = doc_count
        self.entries = dict(sorted(entries.items()))
        self.source = source
        self.words = tuple(self.entries)
        self._cache: dict[str, np.ndarray] = {}

    def __len__(self):
        return len(self.entries)

    def __contains__(self, word):
        return word in self.entries

    def __getitem__(self, word) -> TermStats:
        return self.entries[word]

    @property
    def vocabulary(self) -> frozenset[str]:
        return frozenset(self.entries)

    def with_keywords(self, rake: Mapping[str, tuple[int, int]]) -> "ScoreTable":
        entries = {}
        for w, st in self.entries.items():
            adj, within = rake.get(w, (0, 0))
            entries[w] = TermStats(w, st.tf, st.df, st.successor_types, st.successor_tokens, adj, within)
        return ScoreTable(self.doc_count, entries, source=self.source)

    def idf(self, word: str) -> float:
        return idf(self.entries[word].df, self.doc_count)

    def row(self, word: str) -> dict:
        st = self.entries[word]
        w_idf = idf(st.df, self.doc_count)
        return {
            "word": word,
            "tf": st.tf,
            "df": st.df,
            "idf": w_idf,
            "tf_idf": tf_idf(st.tf, w_idf),
            "log_tf_idf": log_tf_idf(st.tf, w_idf),
            "tcf_unique": tcf(st, "unique"),
            "tcf_total": tcf(st, "total"),
            "adjacency": st.adjacency_freq,
            "within": st.within_freq,
            "rake": rake_score(st.adjacency_freq, st.within_freq),
        }

    def column(self, name: str) -> np.ndarray:
        """Scores for measure/column ``name`` aligned with :attr:`words`."""
        if name in self._cache:
            return self._cache[name]
        stats = self.entries.values()
        if name in ("tf", "df"):
            col = np.array([getattr(s, name) for s in stats], dtype=np.int64)
        elif name in ("tcf_unique", "successor_types"):
            col = np.array([s.successor_types for s in stats], dtype=np.int64)
        elif name in ("tcf_total", "successor_tokens"):
            col = np.array([s.successor_tokens for s in stats], dtype=np.int64)
        elif name in ("adjacency", "within"):
            col = np.array([getattr(s, name + "_freq") for s in stats], dtype=np.int64)
        elif name == "rake":
            col = np.array([rake_score(s.adjacency_freq, s.within_freq) for s in stats], dtype=np.int64)
        elif name in ("idf", "tf_idf", "log_tf_idf"):
            # scalar path keeps these bit-identical to row()
            col = np.array([self.row(w)[name] for w in self.words], dtype=np.float64)
        else:
            raise KeyError(f"unknown score column {name!r}")
        self._cache[name] = col
        return col

    def scores(self, name: str) -> dict[str, float]:
        return dict(zip(self.words, self.column(name).tolist()))

    # --- CSV round trip ---

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for w in self.words:
            r = self.row(w)
            writer.writerow(
                [
                    w,
                    r["tf"],
                    r["df"],
                    f"{r['idf']:.6f}",
                    f"{r['tf_idf']:.6f}",
                    f"{r['log_tf_idf']:.6f}",
                    r["tcf_unique"],
                    r["tcf_total"],
                    r["adjacency"],
                    r["within"],
                ]
            )
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, source: str = "<csv>") -> "ScoreTable":
        """Parse a score-table CSV, rebuilding reals from the integer columns.

        The document count is not a column; it is recovered from the printed
        ``idf`` values and checked against every row.
        """
        reader = csv.reader(io.StringIO(text))
        header = next(reader, None)
        if header is None:
            raise DataError("score table CSV is empty")
        if tuple(header) != CSV_HEADER:
            raise DataError(f"unexpected score table header: {','.join(header)}")
        entries = {}
        printed_idf = {}
        for lineno, rec in enumerate(reader, start=2):
            if not rec:
                continue
            if len(rec) != len(CSV_HEADER):
                raise DataError(f"line {lineno}: expected {len(CSV_HEADER)} fields, got {len(rec)}")
            try:
                word = rec[0]
                tf, df, tcf_u, tcf_t, adj, within = (int(rec[i]) for i in (1, 2, 6, 7, 8, 9))
                printed_idf[word] = float(rec[3])
            except ValueError as exc:
                raise DataError(f"line {lineno}: {exc}") from None
            if word in entries:
                raise DataError(f"line {lineno}: duplicate word {word!r}")
            entries[word] = TermStats(word, tf, df, tcf_u, tcf_t, adj, within)
        doc_count = _recover_doc_count(entries, printed_idf)
        return cls(doc_count, entries, source=source)

    def __eq__(self, other):
        if not isinstance(other, ScoreTable):
            return NotImplemented
        return self.doc_count == other.doc_count and self.entries == other.entries

    def __repr__(self):
        return f"ScoreTable(doc_count={self.doc_count}, words={len(self)}, source={self.source!r})"


def _recover_doc_count(entries: Mapping[str, TermStats], printed_idf: Mapping[str, float]) -> int:
    if not entries:
        return 0
    max_df = max(st.df for st in entries.values())
    anchor = next(w for w, st in entries.items() if st.df == max_df)
    estimate = max_df * math.exp(printed_idf[anchor])
    spread = max(2, math.ceil(estimate * 1e-6))
    candidates = sorted(
        range(max(max_df, math.floor(estimate) - spread), math.ceil(estimate) + spread + 1),
        key=lambda n: abs(n - estimate),
    )
    for n in candidates:
        if all(f"{math.log(n / st.df):.6f}" == f"{printed_idf[w]:.6f}" for w, st in entries.items()):
            return n
    raise DataError("idf column is inconsistent with df; cannot recover document count")


def build_score_table(corpus: Corpus, keywords: KeywordSet | None = None, workers: int = 1) -> ScoreTable:
    """Counts, derived scores and (when ``keywords`` is given) RAKE frequencies in one table."""
    table = compute_counts(corpus, workers=workers)
    if keywords is not None:
        table = table.with_keywords(rake_frequencies(corpus, keywords))
    return table
