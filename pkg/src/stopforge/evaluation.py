"""Precision / recall / F1 of generated stop lists against reference lists."""

from __future__ import annotations

import csv
import io
import json
import logging
from dataclasses import asdict, dataclass
from typing import BinaryIO, Iterable, Mapping, Sequence

from .corpus import DEFAULT_CONFIG, TokenizerConfig, tokenize
from .errors import DataError
from .stoplist import StopList

logger = logging.getLogger(__name__)

SWEEP_HEADER = ("measure", "mode", "cutoff", "list_size", "precision", "recall", "f1")


@dataclass(frozen=True)
class ReferenceList:
    name: str
    words: frozenset[str]

    def __len__(self):
        return len(self.words)


def reference_from_words(words: Iterable[str], name: str, config: TokenizerConfig = DEFAULT_CONFIG) -> ReferenceList:
    normalized = set()
    for line in words:
        if line.lstrip().startswith("#"):
            continue
        normalized.update(tokenize(line, config))
    if not normalized:
        raise DataError(f"reference list {name!r} is empty after normalization")
    return ReferenceList(name, frozenset(normalized))


def load_reference(source: BinaryIO, name: str, config: TokenizerConfig = DEFAULT_CONFIG) -> ReferenceList:
    """Read a one-word-per-line reference list; ``#`` lines are comments, duplicates collapse."""
    try:
        text = source.read().decode("utf-8")
    except UnicodeDecodeError as exc:
        raise DataError(f"reference list {name!r}: invalid UTF-8 ({exc.reason})") from None
    return reference_from_words(text.splitlines(), name, config)


def restrict_to_vocabulary(reference: ReferenceList, vocabulary) -> ReferenceList:
    """Keep only reference words that occur in ``vocabulary`` (a set, a Corpus or a ScoreTable)."""
    vocab = getattr(vocabulary, "vocabulary", vocabulary)
    return ReferenceList(reference.name + "|vocab", frozenset(w for w in reference.words if w in vocab))


@dataclass(frozen=True)
class EvalReport:
    precision: float
    recall: float
    f1: float
    generated_size: int
    reference_size: int
    intersection_size: int
    empty_generated: bool = False

    def to_json(self, reference: str, **flags) -> str:
        payload = {"reference": reference, **asdict(self), **flags}
        return json.dumps(payload, indent=2) + "\n"


def f_measure(precision: float, recall: float) -> float:
    if precision + recall == 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


def evaluate(generated, reference: ReferenceList | Iterable[str]) -> EvalReport:
    """Compare a generated list (StopList or any iterable of words) to a reference.

    An empty generated list scores 0 on every metric and sets ``empty_generated``.
    """
    gen = generated.word_set if isinstance(generated, StopList) else frozenset(generated)
    ref = reference.words if isinstance(reference, ReferenceList) else frozenset(reference)
    if not ref:
        raise DataError("reference list is empty")
    inter = len(gen & ref)
    if not gen:
        logger.warning("generated stop list is empty; scoring 0/0/0")
        return EvalReport(0.0, 0.0, 0.0, 0, len(ref), 0, empty_generated=True)
    p = inter / len(gen)
    r = inter / len(ref)
    return EvalReport(p, r, f_measure(p, r), len(gen), len(ref), inter)


@dataclass(frozen=True)
class SweepRow:
    measure: str
    mode: str
    step: int
    cutoff: float
    list_size: int
    precision: float
    recall: float
    f1: float


def sweep_report(sweep: Mapping[str, Sequence[StopList]], reference: ReferenceList) -> list[SweepRow]:
    if not sweep or not any(sweep.values()):
        raise DataError("sweep is empty")
    rows = []
    for measure, lists in sweep.items():
        for step, sl in enumerate(lists):
            rep = evaluate(sl, reference)
            rows.append(
                SweepRow(measure, sl.mode or "", step, sl.cutoff, len(sl), rep.precision, rep.recall, rep.f1)
            )
    return rows


def best_cutoff(rows: Sequence[SweepRow], criterion: str = "precision") -> tuple[str, float]:
    """Row maximizing ``criterion``; ties go to the smaller list, then the stricter (earlier) step."""
    if criterion not in ("precision", "f1"):
        raise ValueError(f"criterion must be 'precision' or 'f1', got {criterion!r}")
    if not rows:
        raise DataError("no sweep rows to choose from")
    best = min(rows, key=lambda r: (-getattr(r, criterion), r.list_size, r.step))
    return best.measure, best.cutoff


def sweep_csv(rows: Iterable[SweepRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SWEEP_HEADER)
    for r in rows:
        writer.writerow(
            [r.measure, r.mode, f"{r.cutoff:.6f}", r.list_size, f"{r.precision:.6f}", f"{r.recall:.6f}", f"{r.f1:.6f}"]
        )
    return buf.getvalue()
