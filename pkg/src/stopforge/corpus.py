"""Loading and tokenizing short-document collections (one tweet per line or JSONL)."""

from __future__ import annotations

import io
import json
import os
from dataclasses import dataclass, field
from typing import BinaryIO, Iterable

from .errors import DataError

URL_PREFIXES = ("http://", "https://", "www.")
APOSTROPHES = "'’"


@dataclass(frozen=True)
class TokenizerConfig:
    """Switches for :func:`tokenize`. All default to the tweet-oriented behaviour."""

    lowercase: bool = True
    drop_urls: bool = True
    drop_mentions: bool = True
    strip_hashtag_prefix: bool = True
    keep_intraword_apostrophe: bool = True


DEFAULT_CONFIG = TokenizerConfig()


def _is_url(token: str) -> bool:
    # leading punctuation is ignored so "(http://x)" is a URL too; keeps tokenize idempotent
    start = 0
    while start < len(token) and not token[start].isalnum():
        start += 1
    return token[start:].lower().startswith(URL_PREFIXES)


def _strip_edges(token: str, keep_lead: str) -> str:
    start, end = 0, len(token)
    while start < end and not token[start].isalnum() and token[start] not in keep_lead:
        start += 1
    # a kept '#' or '@' only survives as the very first character
    if start < end and token[start] in keep_lead:
        lead = token[start]
        inner = _strip_edges(token[start + 1 :], "")
        return lead + inner if inner else ""
    while end > start and not token[end - 1].isalnum():
        end -= 1
    return token[start:end]


def tokenize(text: str, config: TokenizerConfig = DEFAULT_CONFIG) -> list[str]:
    """Split ``text`` into normalized tokens.

    Whitespace-separated chunks are processed in order: URLs (``http://``,
    ``https://``, ``www.``) and ``@mentions`` are dropped, a leading ``#`` is
    removed from hashtags, case is folded, and leading/trailing characters that
    are not alphanumeric are stripped. Apostrophes inside a word are kept unless
    ``config.keep_intraword_apostrophe`` is off, in which case they are deleted.

    >>> tokenize("The quake hit! http://t.co/x #earthquake @user")
    ['the', 'quake', 'hit', 'earthquake']
    """
    keep_lead = ""
    if not config.strip_hashtag_prefix:
        keep_lead += "#"
    if not config.drop_mentions:
        keep_lead += "@"

    tokens = []
    for chunk in text.split():
        if config.drop_urls and _is_url(chunk):
            continue
        if config.drop_mentions and chunk.startswith("@"):
            continue
        if config.strip_hashtag_prefix:
            chunk = chunk.lstrip("#")
        if config.lowercase:
            chunk = chunk.lower()
        token = _strip_edges(chunk, keep_lead)
        if not config.keep_intraword_apostrophe:
            token = _strip_edges("".join(c for c in token if c not in APOSTROPHES), keep_lead)
        if token:
            tokens.append(token)
    return tokens


@dataclass(frozen=True)
class Document:
    id: int
    raw: str
    tokens: tuple[str, ...]


@dataclass(frozen=True)
class Corpus:
    """An immutable, ordered collection of tokenized documents."""

    documents: tuple[Document, ...]
    name: str = "<corpus>"
    vocabulary: frozenset[str] = field(init=False, compare=False)

    def __post_init__(self):
        vocab = set()
        for doc in self.documents:
            vocab.update(doc.tokens)
        object.__setattr__(self, "vocabulary", frozenset(vocab))

    @property
    def doc_count(self) -> int:
        return len(self.documents)

    def __len__(self):
        return len(self.documents)

    def __iter__(self):
        return iter(self.documents)

    def __add__(self, other: "Corpus") -> "Corpus":
        offset = len(self.documents)
        shifted = tuple(Document(offset + d.id, d.raw, d.tokens) for d in other.documents)
        return Corpus(self.documents + shifted, name=f"{self.name}+{other.name}")

    @classmethod
    def from_texts(
        cls, texts: Iterable[str], config: TokenizerConfig = DEFAULT_CONFIG, name: str = "<corpus>"
    ) -> "Corpus":
        docs = tuple(Document(i, t, tuple(tokenize(t, config))) for i, t in enumerate(texts))
        return cls(docs, name=name)

    @classmethod
    def from_tokens(cls, token_lists: Iterable[Iterable[str]], name: str = "<corpus>") -> "Corpus":
        """Build a corpus from already-normalized token sequences (no tokenization applied)."""
        docs = []
        for i, toks in enumerate(token_lists):
            toks = tuple(toks)
            docs.append(Document(i, " ".join(toks), toks))
        return cls(tuple(docs), name=name)


def _decode_lines(source: BinaryIO):
    for lineno, raw in enumerate(source, start=1):
        try:
            line = raw.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise DataError(f"line {lineno}: invalid UTF-8 ({exc.reason})") from None
        yield lineno, line.rstrip("\r\n")


def load_corpus(
    source: BinaryIO,
    format: str = "lines",
    text_field: str = "text",
    config: TokenizerConfig = DEFAULT_CONFIG,
    name: str = "<stream>",
) -> Corpus:
    """Read a corpus from a binary stream.

    ``format="lines"`` treats every non-blank line as one document;
    ``format="jsonl"`` reads one JSON object per non-blank line and takes the
    document text from ``text_field``. Raises :class:`DataError` for malformed
    records, reporting the 1-based line number.
    """
    if format not in ("lines", "jsonl"):
        raise DataError(f"unknown corpus format {format!r}")
    texts = []
    for lineno, line in _decode_lines(source):
        if not line.strip():
            continue
        if format == "lines":
            texts.append(line)
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise DataError(f"line {lineno}: malformed JSON ({exc.msg})") from None
        if not isinstance(record, dict) or text_field not in record:
            raise DataError(f"line {lineno}: missing text field {text_field!r}")
        text = record[text_field]
        if not isinstance(text, str):
            raise DataError(f"line {lineno}: field {text_field!r} is not a string")
        texts.append(text)
    return Corpus.from_texts(texts, config, name=name)


def read_corpus(path, format="lines", text_field="text", config=DEFAULT_CONFIG) -> Corpus:
    with open(path, "rb") as fh:
        return load_corpus(fh, format, text_field, config, name=os.fspath(path))


def corpus_from_string(text: str, format="lines", text_field="text", config=DEFAULT_CONFIG) -> Corpus:
    return load_corpus(io.BytesIO(text.encode("utf-8")), format, text_field, config)


def dump_lines(corpus: Corpus) -> str:
    """Serialize a corpus in the ``lines`` format (normalized tokens, LF endings)."""
    return "".join(" ".join(doc.tokens) + "\n" for doc in corpus.documents)
