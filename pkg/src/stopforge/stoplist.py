"""Candidate stop lists from score tables, by absolute threshold or top fraction,
and cutoff sweeps that produce nested families of lists."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import DataError
from .measures import ScoreTable

HIGH = "high-is-stopword"
LOW = "low-is-stopword"

TOP_FRACTION = "top-fraction"
ABSOLUTE = "absolute-threshold"
MODE_ALIASES = {"top-fraction": TOP_FRACTION, "absolute": ABSOLUTE, "absolute-threshold": ABSOLUTE}


@dataclass(frozen=True)
class MeasureSpec:
    name: str
    polarity: str

    @property
    def sign(self) -> int:
        return 1 if self.polarity == HIGH else -1


MEASURES = {
    "tf": MeasureSpec("tf", HIGH),
    "idf": MeasureSpec("idf", LOW),
    "tf_idf": MeasureSpec("tf_idf", LOW),
    "log_tf_idf": MeasureSpec("log_tf_idf", LOW),
    "tcf_unique": MeasureSpec("tcf_unique", HIGH),
    "tcf_total": MeasureSpec("tcf_total", HIGH),
    "rake": MeasureSpec("rake", HIGH),
}


def get_measure(measure) -> MeasureSpec:
    if isinstance(measure, MeasureSpec):
        return measure
    try:
        return MEASURES[measure]
    except KeyError:
        raise DataError(f"unknown measure {measure!r}; choose from {', '.join(MEASURES)}") from None


@dataclass(frozen=True)
class StopList:
    """Stop words in rank order (most stop-word-like first) with their provenance."""

    words: tuple[str, ...]
    measure: str | None = None
    mode: str | None = None
    cutoff: float | None = None
    corpus: str | None = None
    word_set: frozenset[str] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "word_set", frozenset(self.words))

    def __len__(self):
        return len(self.words)

    def __iter__(self):
        return iter(self.words)

    def __contains__(self, word):
        return word in self.word_set

    def to_text(self) -> str:
        lines = []
        if self.measure is not None:
            lines.append(f"# measure: {self.measure}")
        if self.mode is not None:
            lines.append(f"# mode: {self.mode}")
        if self.cutoff is not None:
            lines.append(f"# cutoff: {self.cutoff:.6f}")
        if self.corpus is not None:
            lines.append(f"# corpus: {self.corpus}")
        lines.extend(self.words)
        return "".join(ln + "\n" for ln in lines)

    @classmethod
    def from_text(cls, text: str) -> "StopList":
        words, meta = [], {}
        for line in text.splitlines():
            stripped = line.strip()
            if not stripped:
                continue
            if stripped.startswith("#"):
                key, sep, value = stripped[1:].partition(":")
                if sep:
                    meta[key.strip()] = value.strip()
                continue
            words.append(stripped)
        cutoff = meta.get("cutoff")
        try:
            cutoff = float(cutoff) if cutoff is not None else None
        except ValueError:
            cutoff = None
        return cls(
            tuple(dict.fromkeys(words)),
            measure=meta.get("measure"),
            mode=meta.get("mode"),
            cutoff=cutoff,
            corpus=meta.get("corpus"),
        )


def rank_order(table: ScoreTable, measure) -> tuple[np.ndarray, np.ndarray]:
    """Indices into ``table.words`` from most to least stop-word-like, and the oriented scores.

    Ties fall back to lexicographic word order because ``table.words`` is sorted
    and the sort is stable.
    """
    spec = get_measure(measure)
    oriented = spec.sign * table.column(spec.name).astype(np.float64)
    order = np.argsort(-oriented, kind="stable")
    return order, oriented


def _require_rows(table: ScoreTable):
    if len(table) == 0:
        raise DataError("score table is empty")


def generate(table: ScoreTable, measure, cutoff: float) -> StopList:
    """Absolute threshold: ``score >= cutoff`` for high-is-stopword measures, ``score <= cutoff`` otherwise."""
    _require_rows(table)
    spec = get_measure(measure)
    order, _ = rank_order(table, spec)
    scores = table.column(spec.name)
    keep = scores >= cutoff if spec.polarity == HIGH else scores <= cutoff
    words = tuple(table.words[i] for i in order if keep[i])
    return StopList(words, spec.name, ABSOLUTE, float(cutoff), table.source)


def _as_fraction(value) -> Fraction:
    # repr round-trip so 0.15 means 3/20, not the binary float just above it
    if isinstance(value, Fraction):
        return value
    return Fraction(repr(float(value))) if isinstance(value, float) else Fraction(value)


def top_count(fraction, vocab_size: int) -> int:
    frac = _as_fraction(fraction)
    if not 0 < frac <= 1:
        raise DataError(f"fraction must lie in (0, 1], got {float(frac)}")
    return math.ceil(frac * vocab_size)


def generate_top_fraction(table: ScoreTable, measure, fraction) -> StopList:
    """The ``ceil(fraction * |V|)`` most stop-word-like words."""
    _require_rows(table)
    spec = get_measure(measure)
    k = top_count(fraction, len(table))
    order, _ = rank_order(table, spec)
    words = tuple(table.words[i] for i in order[:k])
    return StopList(words, spec.name, TOP_FRACTION, float(_as_fraction(fraction)), table.source)


@dataclass(frozen=True)
class SweepConfig:
    """Sweep settings.

    In top-fraction mode the fractions are ``max_fraction * k / steps`` for
    ``k = 1..steps`` unless ``fractions`` is given explicitly. In absolute mode
    the thresholds are ``steps`` evenly spaced values from the strictest score
    (the most stop-word-like word) to the most liberal one.
    """

    measures: tuple = ()
    steps: int = 10
    mode: str = TOP_FRACTION
    max_fraction: float = 0.5
    fractions: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "measures", tuple(get_measure(m) for m in self.measures))
        if self.mode not in MODE_ALIASES:
            raise DataError(f"unknown sweep mode {self.mode!r}")
        object.__setattr__(self, "mode", MODE_ALIASES[self.mode])
        if not isinstance(self.steps, int) or self.steps < 2:
            raise DataError(f"steps must be an integer >= 2, got {self.steps!r}")
        if self.fractions is not None:
            if len(self.fractions) != self.steps:
                raise DataError("len(fractions) must equal steps")
            object.__setattr__(self, "fractions", tuple(_as_fraction(f) for f in self.fractions))
        fracs = self.fraction_schedule()
        if not all(0 < f <= 1 for f in fracs) or any(a >= b for a, b in zip(fracs, fracs[1:])):
            raise DataError("fractions must be strictly increasing within (0, 1]")

    def fraction_schedule(self) -> tuple[Fraction, ...]:
        if self.fractions is not None:
            return self.fractions
        mf = _as_fraction(self.max_fraction)
        return tuple(mf * k / self.steps for k in range(1, self.steps + 1))

    def threshold_schedule(self, table: ScoreTable, measure) -> list[float]:
        spec = get_measure(measure)
        scores = table.column(spec.name).astype(np.float64)
        strict, liberal = (scores.max(), scores.min()) if spec.polarity == HIGH else (scores.min(), scores.max())
        cuts = [float(strict + (liberal - strict) * k / (self.steps - 1)) for k in range(self.steps)]
        cuts[-1] = float(liberal)
        return cuts


def sweep(table: ScoreTable, config: SweepConfig) -> dict[str, list[StopList]]:
    """One list per step for each measure, ordered strictest to most liberal."""
    result = {}
    for spec in config.measures:
        if config.mode == TOP_FRACTION:
            lists = [generate_top_fraction(table, spec, f) for f in config.fraction_schedule()]
        else:
            _require_rows(table)
            lists = [generate(table, spec, t) for t in config.threshold_schedule(table, spec)]
        result[spec.name] = lists
    return result


def polarity_ok(table: ScoreTable, stoplist: StopList, measure) -> bool:
    """True when every listed word is at least as stop-word-like as every unlisted word."""
    spec = get_measure(measure)
    oriented = dict(zip(table.words, (spec.sign * table.column(spec.name)).tolist()))
    inside = [oriented[w] for w in stoplist.words]
    outside = [v for w, v in oriented.items() if w not in stoplist]
    return not inside or not outside or min(inside) >= max(outside)


def measure_names(names: Sequence[str] | str) -> list[str]:
    if isinstance(names, str):
        names = [n.strip() for n in names.split(",") if n.strip()]
    return [get_measure(n).name for n in names]
