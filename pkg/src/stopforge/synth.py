"""Synthetic tweet corpora with a planted set of function words.

Content words are drawn i.i.d. from a finite Zipf law over ranks
``1..content_vocab_size`` (probability proportional to ``rank ** -zipf_exponent``).
Between each pair of consecutive content words a function word, chosen
uniformly, is inserted with probability ``connector_probability``.

Randomness comes from numpy's PCG64 bit generator seeded with ``seed``; draws
happen in a fixed order (all lengths, then all content ranks, then all
connector coins, then all function-word picks), so a given numpy version maps
a config to one exact corpus.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .corpus import Corpus, Document
from .errors import DataError
from .stoplist import StopList


@dataclass(frozen=True)
class SynthConfig:
    seed: int = 42
    n_docs: int = 2000
    doc_len_min: int = 6
    doc_len_max: int = 12
    function_vocab_size: int = 20
    content_vocab_size: int = 500
    zipf_exponent: float = 1.1
    connector_probability: float = 0.5

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise DataError("seed must be a 64-bit unsigned integer")
        if self.n_docs < 1:
            raise DataError("n_docs must be positive")
        if not 1 <= self.doc_len_min <= self.doc_len_max:
            raise DataError("need 1 <= doc_len_min <= doc_len_max")
        if self.function_vocab_size < 1 or self.content_vocab_size < 1:
            raise DataError("vocabulary sizes must be >= 1")
        if not self.zipf_exponent > 0:
            raise DataError("zipf_exponent must be > 0")
        if not 0 <= self.connector_probability <= 1:
            raise DataError("connector_probability must lie in [0, 1]")


@dataclass(frozen=True)
class GroundTruth:
    planted_stop_words: frozenset[str]

    def to_stoplist(self) -> StopList:
        return StopList(tuple(sorted(self.planted_stop_words)), measure="planted", corpus="synthetic")


def _names(prefix: str, n: int) -> list[str]:
    width = max(4, len(str(n)))
    return [f"{prefix}{i:0{width}d}" for i in range(1, n + 1)]


def function_words(n: int) -> list[str]:
    return _names("fw", n)


def content_words(n: int) -> list[str]:
    return _names("cw", n)


def zipf_probabilities(n: int, exponent: float) -> np.ndarray:
    weights = np.arange(1, n + 1, dtype=np.float64) ** -exponent
    return weights / weights.sum()


def generate(config: SynthConfig) -> tuple[Corpus, GroundTruth]:
    rng = np.random.Generator(np.random.PCG64(config.seed))
    fwords = function_words(config.function_vocab_size)
    cwords = content_words(config.content_vocab_size)

    lengths = rng.integers(config.doc_len_min, config.doc_len_max + 1, size=config.n_docs)
    total = int(lengths.sum())
    ranks = rng.choice(config.content_vocab_size, size=total, p=zipf_probabilities(config.content_vocab_size, config.zipf_exponent))
    coins = rng.random(total) < config.connector_probability
    picks = rng.integers(0, config.function_vocab_size, size=total)

    ranks, coins, picks = ranks.tolist(), coins.tolist(), picks.tolist()
    docs = []
    pos = 0
    for doc_id, length in enumerate(lengths.tolist()):
        toks = [cwords[ranks[pos]]]
        for j in range(pos + 1, pos + length):
            # coin j decides the gap before content word j
            if coins[j]:
                toks.append(fwords[picks[j]])
            toks.append(cwords[ranks[j]])
        pos += length
        toks = tuple(toks)
        docs.append(Document(doc_id, " ".join(toks), toks))
    corpus = Corpus(tuple(docs), name=f"synth(seed={config.seed})")
    return corpus, GroundTruth(frozenset(fwords))
