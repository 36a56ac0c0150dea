"""Command-line driver: analyze -> stoplist / sweep -> eval, plus synth.

Option values resolve, highest precedence first: command-line flags, the
``--config`` file, the file named by ``$STOPFORGE_CONFIG``, built-in defaults.
Config files hold ``key=value`` lines (``#`` comments allowed); keys are option
names with or without the leading dashes.

Exit codes: 0 success, 1 usage error, 2 I/O error, 3 data validation error.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from pathlib import Path

from . import synth as synth_mod
from .corpus import TokenizerConfig, dump_lines, read_corpus, tokenize
from .errors import DataError
from .evaluation import best_cutoff, evaluate, load_reference, restrict_to_vocabulary, sweep_csv, sweep_report
from .measures import KeywordSet, ScoreTable, build_score_table
from .stoplist import MEASURES, StopList, SweepConfig, generate, generate_top_fraction, measure_names, sweep

ENV_CONFIG = "STOPFORGE_CONFIG"

DEFAULTS = {
    "analyze": {"format": "lines", "text_field": "text", "keywords": None, "workers": 1},
    "stoplist": {"top_fraction": None, "threshold": None},
    "sweep": {"steps": 10, "mode": "top-fraction", "max_fraction": 0.5, "vocab_restrict": False, "criterion": "precision"},
    "eval": {"vocab_restrict": False, "input": None, "format": "lines", "text_field": "text"},
    "synth": {
        "len_min": 6,
        "len_max": 12,
        "function_words": 20,
        "content_words": 500,
        "zipf_exponent": 1.1,
        "connector_probability": 0.5,
    },
}
TOKENIZER_DEFAULTS = {
    "lowercase": True,
    "drop_urls": True,
    "drop_mentions": True,
    "strip_hashtag_prefix": True,
    "keep_intraword_apostrophe": True,
}
REQUIRED = {
    "analyze": ("input", "out"),
    "stoplist": ("scores", "measure", "out"),
    "sweep": ("scores", "measures", "reference", "out"),
    "eval": ("list", "reference", "out"),
    "synth": ("seed", "docs", "out", "truth"),
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _tokenizer_flags(p):
    g = p.add_argument_group("tokenizer")
    g.add_argument("--no-lowercase", dest="lowercase", action="store_false")
    g.add_argument("--no-drop-urls", dest="drop_urls", action="store_false")
    g.add_argument("--no-drop-mentions", dest="drop_mentions", action="store_false")
    g.add_argument("--no-strip-hashtags", dest="strip_hashtag_prefix", action="store_false")
    g.add_argument("--no-keep-apostrophes", dest="keep_intraword_apostrophe", action="store_false")


def _corpus_flags(p):
    p.add_argument("--format", choices=("lines", "jsonl"))
    p.add_argument("--text-field")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="stopforge", description="Stop-word list generation and evaluation.")
    subs = parser.add_subparsers(dest="command", parser_class=_Parser)

    def sub(name, help):
        p = subs.add_parser(name, help=help, argument_default=argparse.SUPPRESS)
        p.add_argument("--config", help="key=value file overlaid under explicit flags")
        return p

    p = sub("analyze", "tokenize a corpus and write its score table CSV")
    p.add_argument("--input")
    _corpus_flags(p)
    p.add_argument("--keywords", help="keyword phrases, one per line")
    p.add_argument("--workers", type=int)
    p.add_argument("--out")
    _tokenizer_flags(p)

    p = sub("stoplist", "cut one stop list from a score table")
    p.add_argument("--scores")
    p.add_argument("--measure", choices=tuple(MEASURES))
    p.add_argument("--top-fraction", type=float)
    p.add_argument("--threshold", type=float)
    p.add_argument("--out")

    p = sub("sweep", "sweep cutoffs per measure and evaluate each list")
    p.add_argument("--scores")
    p.add_argument("--measures", help="comma-separated measure names")
    p.add_argument("--steps", type=int)
    p.add_argument("--mode", choices=("top-fraction", "absolute"))
    p.add_argument("--max-fraction", type=float)
    p.add_argument("--reference")
    p.add_argument("--vocab-restrict", action="store_true")
    p.add_argument("--criterion", choices=("precision", "f1"))
    p.add_argument("--out")
    _tokenizer_flags(p)

    p = sub("eval", "evaluate one stop list against a reference list")
    p.add_argument("--list")
    p.add_argument("--reference")
    p.add_argument("--vocab-restrict", action="store_true")
    p.add_argument("--input", help="corpus whose vocabulary restricts the reference")
    _corpus_flags(p)
    p.add_argument("--out")
    _tokenizer_flags(p)

    p = sub("synth", "generate a synthetic corpus with planted function words")
    p.add_argument("--seed", type=int)
    p.add_argument("--docs", type=int)
    p.add_argument("--len-min", type=int)
    p.add_argument("--len-max", type=int)
    p.add_argument("--function-words", type=int)
    p.add_argument("--content-words", type=int)
    p.add_argument("--zipf-exponent", type=float)
    p.add_argument("--connector-probability", type=float)
    p.add_argument("--out")
    p.add_argument("--truth")
    return parser


def _subparser(parser, name):
    for action in parser._actions:
        if isinstance(action, argparse._SubParsersAction):
            return action.choices[name]
    raise KeyError(name)


def _parse_bool(text):
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def load_config_file(path, subparser) -> dict:
    """Parse a ``key=value`` file into option values typed like their flags."""
    by_dest, by_flag = {}, {}
    for a in subparser._actions:
        if a.dest in ("help", "config"):
            continue
        by_dest[a.dest] = a
        for opt in a.option_strings:
            by_flag[opt.lstrip("-").replace("-", "_")] = a
    values = {}
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    for lineno, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        key, sep, raw = stripped.partition("=")
        key, raw = key.strip(), raw.strip()
        if not sep or not key:
            raise DataError(f"{path}:{lineno}: expected key=value")
        name = key.lstrip("-").replace("-", "_")
        action = by_flag.get(name) or by_dest.get(name)
        if action is None:
            raise DataError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            if isinstance(action, (argparse._StoreTrueAction, argparse._StoreFalseAction)):
                flag = _parse_bool(raw)
                # "no-lowercase=true" names the flag; "lowercase=false" names the value
                value = (action.const if flag else not action.const) if name in by_flag else flag
            else:
                value = action.type(raw) if action.type else raw
        except ValueError:
            raise DataError(f"{path}:{lineno}: invalid value for {key!r}: {raw!r}") from None
        if action.choices is not None and value not in action.choices:
            raise DataError(f"{path}:{lineno}: invalid value for {key!r}: {raw!r}")
        values[action.dest] = value
    return values


def resolve_options(parser, argv, environ=None) -> argparse.Namespace:
    environ = os.environ if environ is None else environ
    args = parser.parse_args(argv)
    if args.command is None:
        raise UsageError(parser.format_help())
    sp = _subparser(parser, args.command)
    explicit = vars(args)

    merged = {**DEFAULTS[args.command]}
    if any(a.dest in TOKENIZER_DEFAULTS for a in sp._actions):
        merged.update(TOKENIZER_DEFAULTS)
    if environ.get(ENV_CONFIG):
        merged.update(load_config_file(environ[ENV_CONFIG], sp))
    if explicit.get("config"):
        merged.update(load_config_file(explicit["config"], sp))
    merged.update(explicit)

    missing = [k for k in REQUIRED[args.command] if merged.get(k) is None]
    if missing:
        flags = ", ".join("--" + k.replace("_", "-") for k in missing)
        raise UsageError(f"{sp.format_usage()}{sp.prog}: error: missing required option(s): {flags}")
    return argparse.Namespace(**merged)


def write_atomic(path, text: str):
    """Write ``text`` to ``path`` via a temp file in the same directory and a rename."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(text.encode("utf-8"))
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except FileNotFoundError:
            pass
        raise


def _tok_config(opts) -> TokenizerConfig:
    return TokenizerConfig(**{k: getattr(opts, k) for k in TOKENIZER_DEFAULTS})


def _read_scores(path) -> ScoreTable:
    return ScoreTable.from_csv(Path(path).read_text(encoding="utf-8"), source=os.fspath(path))


def _read_reference(path, config):
    with open(path, "rb") as fh:
        return load_reference(fh, Path(path).stem, config)


def cmd_analyze(opts):
    config = _tok_config(opts)
    if opts.workers < 1:
        raise DataError("workers must be >= 1")
    keywords = None
    if opts.keywords:
        with open(opts.keywords, "rb") as fh:
            keywords = KeywordSet.read(fh, config)
        if len(keywords) == 0:
            raise DataError(f"{opts.keywords}: keyword set is empty")
    corpus = read_corpus(opts.input, opts.format, opts.text_field, config)
    table = build_score_table(corpus, keywords, workers=opts.workers)
    write_atomic(opts.out, table.to_csv())
    return f"analyze: {corpus.doc_count} documents, {len(table)} words -> {opts.out}"


def cmd_stoplist(opts):
    if (opts.top_fraction is None) == (opts.threshold is None):
        raise UsageError("stoplist: give exactly one of --top-fraction or --threshold")
    if opts.top_fraction is not None and not 0 < opts.top_fraction <= 1:
        raise DataError("--top-fraction must lie in (0, 1]")
    table = _read_scores(opts.scores)
    if opts.top_fraction is not None:
        sl = generate_top_fraction(table, opts.measure, opts.top_fraction)
    else:
        sl = generate(table, opts.measure, opts.threshold)
    write_atomic(opts.out, sl.to_text())
    return f"stoplist: {len(sl)} words by {sl.measure} ({sl.mode} {sl.cutoff:g}) -> {opts.out}"


def cmd_sweep(opts):
    try:
        names = measure_names(opts.measures)
    except DataError as exc:
        raise UsageError(f"sweep: {exc}") from None
    if not names:
        raise UsageError("sweep: --measures is empty")
    config = SweepConfig(tuple(names), steps=opts.steps, mode=opts.mode, max_fraction=opts.max_fraction)
    table = _read_scores(opts.scores)
    reference = _read_reference(opts.reference, _tok_config(opts))
    if opts.vocab_restrict:
        reference = restrict_to_vocabulary(reference, table)
    rows = sweep_report(sweep(table, config), reference)
    write_atomic(opts.out, sweep_csv(rows))
    measure, cutoff = best_cutoff(rows, opts.criterion)
    return f"sweep: {len(rows)} rows; best {opts.criterion} at {measure} cutoff {cutoff:.6f} -> {opts.out}"


def cmd_eval(opts):
    config = _tok_config(opts)
    if opts.vocab_restrict and not opts.input:
        raise UsageError("eval: --vocab-restrict needs --input")
    listed = StopList.from_text(Path(opts.list).read_text(encoding="utf-8"))
    words = [t for w in listed.words for t in tokenize(w, config)]
    reference = _read_reference(opts.reference, config)
    if opts.vocab_restrict:
        corpus = read_corpus(opts.input, opts.format, opts.text_field, config)
        reference = restrict_to_vocabulary(reference, corpus)
    report = evaluate(words, reference)
    write_atomic(opts.out, report.to_json(reference.name, vocab_restricted=bool(opts.vocab_restrict)))
    return (
        f"eval: precision {report.precision:.6f} recall {report.recall:.6f} f1 {report.f1:.6f} -> {opts.out}"
    )


def cmd_synth(opts):
    config = synth_mod.SynthConfig(
        seed=opts.seed,
        n_docs=opts.docs,
        doc_len_min=opts.len_min,
        doc_len_max=opts.len_max,
        function_vocab_size=opts.function_words,
        content_vocab_size=opts.content_words,
        zipf_exponent=opts.zipf_exponent,
        connector_probability=opts.connector_probability,
    )
    corpus, truth = synth_mod.generate(config)
    write_atomic(opts.out, dump_lines(corpus))
    write_atomic(opts.truth, truth.to_stoplist().to_text())
    return f"synth: {corpus.doc_count} documents, {len(truth.planted_stop_words)} planted words -> {opts.out}"


COMMANDS = {
    "analyze": cmd_analyze,
    "stoplist": cmd_stoplist,
    "sweep": cmd_sweep,
    "eval": cmd_eval,
    "synth": cmd_synth,
}


def run(argv=None, stdout=None, stderr=None, environ=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        try:
            opts = resolve_options(parser, argv, environ)
        except SystemExit as exc:  # --help
            return int(exc.code or 0)
        summary = COMMANDS[opts.command](opts)
    except UsageError as exc:
        print(str(exc).rstrip(), file=stderr)
        return 1
    except DataError as exc:
        print(f"stopforge: error: {exc}", file=stderr)
        return 3
    except OSError as exc:
        print(f"stopforge: I/O error: {exc}", file=stderr)
        return 2
    print(summary, file=stdout)
    return 0


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
