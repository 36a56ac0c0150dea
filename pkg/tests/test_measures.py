import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import naive_counts, naive_rake

from stopforge.corpus import Corpus
from stopforge.errors import DataError
from stopforge.measures import (
    KeywordSet,
    ScoreTable,
    build_score_table,
    compute_counts,
    idf,
    log_tf_idf,
    rake_frequencies,
    rake_score,
    tcf,
    tf_idf,
)

WORKED = ["the quake hit the city", "the quake shook the town"]


@pytest.fixture
def worked():
    return Corpus.from_texts(WORKED)


def test_worked_counts(worked):
    table = compute_counts(worked)
    the, quake, city = table["the"], table["quake"], table["city"]
    assert (the.tf, the.df, the.successor_types, the.successor_tokens) == (4, 2, 3, 4)
    assert (quake.tf, quake.df, quake.successor_types, quake.successor_tokens) == (2, 2, 2, 2)
    assert (city.tf, city.df, city.successor_types, city.successor_tokens) == (1, 1, 0, 0)
    assert table.doc_count == 2
    assert set(table.words) == worked.vocabulary


def test_tcf_modes(worked):
    table = compute_counts(worked)
    assert tcf(table["the"], "unique") == 3
    assert tcf(table["the"]) == 3
    assert tcf(table["the"], "total") == 4
    assert tcf(table["city"], "unique") == 0
    with pytest.raises(ValueError):
        tcf(table["the"], "bigram")


@pytest.mark.parametrize(
    "df, n, expected", [(2, 2, 0.0), (1, 2, 0.6931), (1, 1, 0.0)]
)
def test_idf(df, n, expected):
    assert idf(df, n) == pytest.approx(expected, abs=1e-4)


@pytest.mark.parametrize("df, n", [(0, 2), (3, 2), (1, 0)])
def test_idf_rejects_out_of_range(df, n):
    with pytest.raises(ValueError):
        idf(df, n)


@pytest.mark.parametrize(
    "tf, idf_value, expected",
    [(1, math.log(2), 0.6931), (4, 0.0, 0.0), (3, math.log(2), 2.0794)],
)
def test_tf_idf(tf, idf_value, expected):
    assert tf_idf(tf, idf_value) == pytest.approx(expected, abs=1e-4)


@pytest.mark.parametrize(
    "tf, idf_value, expected",
    [(1, math.log(2), 0.6931), (3, 1.0, 2.0986), (5, 0.0, 0.0)],
)
def test_log_tf_idf(tf, idf_value, expected):
    assert log_tf_idf(tf, idf_value) == pytest.approx(expected, abs=1e-4)


def test_tf_must_be_positive():
    with pytest.raises(ValueError):
        tf_idf(0, 1.0)
    with pytest.raises(ValueError):
        log_tf_idf(0, 1.0)


@pytest.mark.parametrize("adj, within, expected", [(2, 0, 2), (0, 2, -2), (3, 3, 0)])
def test_rake_score(adj, within, expected):
    assert rake_score(adj, within) == expected


def test_rake_worked_example():
    corpus = Corpus.from_texts(["the linear models in the linear models"])
    freqs = rake_frequencies(corpus, KeywordSet.from_phrases(["linear models"]))
    assert freqs["linear"] == (0, 2)
    assert freqs["models"] == (0, 2)
    assert freqs["the"] == (2, 0)
    assert freqs["in"] == (1, 0)


def test_rake_between_occurrences_counts_twice_and_inside_wins():
    corpus = Corpus.from_texts(["lm x lm", "a b c"])
    kw = KeywordSet.from_phrases(["lm", "b c", "c"])
    freqs = rake_frequencies(corpus, kw)
    assert freqs["x"] == (2, 0)
    assert freqs["a"] == (1, 0)
    # "c" sits inside the longer phrase "b c"; it is never counted as adjacent
    assert freqs["c"] == (0, 1)


def test_rake_rejects_empty_keywords(worked):
    with pytest.raises(DataError):
        rake_frequencies(worked, KeywordSet(()))
    with pytest.raises(DataError):
        KeywordSet((("a",), ()))


def test_keyword_phrases_are_tokenized():
    kw = KeywordSet.from_phrases(["Linear Models!", "   ", "http://x.y"])
    assert kw.phrases == (("linear", "models"),)


def test_build_score_table_rows(worked):
    table = build_score_table(worked)
    row = table.row("the")
    assert (row["tf"], row["df"], row["tcf_unique"]) == (4, 2, 3)
    assert row["idf"] == 0.0 and row["tf_idf"] == 0.0 and row["log_tf_idf"] == 0.0
    assert row["adjacency"] == 0 and row["within"] == 0


def test_build_score_table_empty():
    table = build_score_table(Corpus.from_texts([]))
    assert len(table) == 0 and table.doc_count == 0


def test_build_score_table_single_document():
    table = build_score_table(Corpus.from_texts(["a b a"]))
    a = table["a"]
    assert (a.tf, a.df, table.idf("a"), a.successor_types) == (2, 1, 0.0, 1)


def test_build_score_table_with_keywords():
    corpus = Corpus.from_texts(["the linear models in the linear models", "the end"])
    table = build_score_table(corpus, KeywordSet.from_phrases(["linear models"]))
    assert table.row("the")["adjacency"] == 2
    assert table.row("linear")["within"] == 2
    assert table.row("end")["adjacency"] == 0
    assert table.row("the")["rake"] == 2


small_corpora = st.lists(
    st.lists(st.sampled_from([f"w{i}" for i in range(15)]), max_size=10), max_size=20
)


@settings(max_examples=200)
@given(small_corpora)
def test_brute_force_equivalence(docs):
    table = compute_counts(Corpus.from_tokens(docs))
    expected = naive_counts(docs)
    got = {w: (s.tf, s.df, s.successor_types, s.successor_tokens) for w, s in table.entries.items()}
    assert got == expected


@settings(max_examples=200)
@given(small_corpora)
def test_count_invariants(docs):
    table = compute_counts(Corpus.from_tokens(docs))
    for s in table.entries.values():
        assert s.df <= s.tf
        assert s.df <= table.doc_count
        assert s.successor_types <= s.successor_tokens <= s.tf
        assert s.successor_types <= len(table)
    assert sum(s.successor_tokens for s in table.entries.values()) == sum(max(len(d) - 1, 0) for d in docs)


@settings(max_examples=100)
@given(small_corpora)
def test_idf_nonnegative_and_zero_iff_everywhere(docs):
    table = compute_counts(Corpus.from_tokens(docs))
    for w, s in table.entries.items():
        v = table.idf(w)
        assert v >= 0
        assert (v == 0) == (s.df == table.doc_count)


@settings(max_examples=100)
@given(small_corpora, st.randoms(use_true_random=False))
def test_document_order_invariance(docs, rnd):
    shuffled = list(docs)
    rnd.shuffle(shuffled)
    a = build_score_table(Corpus.from_tokens(docs))
    b = build_score_table(Corpus.from_tokens(shuffled))
    assert a == b
    assert a.to_csv() == b.to_csv()


@settings(max_examples=100)
@given(small_corpora, st.lists(st.lists(st.sampled_from([f"w{i}" for i in range(15)]), min_size=1, max_size=3), min_size=1, max_size=3))
def test_duplication_law(docs, phrases):
    kw = KeywordSet(tuple(tuple(p) for p in phrases))
    corpus = Corpus.from_tokens(docs)
    once = build_score_table(corpus, kw)
    twice = build_score_table(corpus + corpus, kw)
    assert twice.doc_count == 2 * once.doc_count
    for w, s in once.entries.items():
        t = twice[w]
        assert (t.tf, t.df, t.successor_tokens) == (2 * s.tf, 2 * s.df, 2 * s.successor_tokens)
        assert (t.adjacency_freq, t.within_freq) == (2 * s.adjacency_freq, 2 * s.within_freq)
        assert t.successor_types == s.successor_types
        assert twice.idf(w) == pytest.approx(once.idf(w), abs=1e-12)


@settings(max_examples=200)
@given(small_corpora, st.lists(st.lists(st.sampled_from([f"w{i}" for i in range(15)]), min_size=1, max_size=3), min_size=1, max_size=4))
def test_rake_matches_brute_force(docs, phrases):
    kw = KeywordSet(tuple(tuple(p) for p in phrases))
    freqs = rake_frequencies(Corpus.from_tokens(docs), kw)
    adj, within = naive_rake(docs, kw.phrases)
    for w in set(adj) | set(within) | set(freqs):
        assert freqs.get(w, (0, 0)) == (adj.get(w, 0), within.get(w, 0))


def test_parallel_counts_match_sequential():
    rnd = random.Random(7)
    docs = [[f"w{rnd.randrange(40)}" for _ in range(rnd.randrange(12))] for _ in range(500)]
    corpus = Corpus.from_tokens(docs)
    seq = compute_counts(corpus)
    par = compute_counts(corpus, workers=3)
    assert seq == par
    assert seq.to_csv() == par.to_csv()


def test_csv_worked_row(worked):
    lines = build_score_table(worked).to_csv().splitlines()
    assert lines[0] == "word,tf,df,idf,tf_idf,log_tf_idf,tcf_unique,tcf_total,adjacency,within"
    assert "the,4,2,0.000000,0.000000,0.000000,3,4,0,0" in lines
    assert "city,1,1,0.693147,0.693147,0.693147,0,0,0,0" in lines


@settings(max_examples=100)
@given(small_corpora)
def test_csv_round_trip(docs):
    table = build_score_table(Corpus.from_tokens(docs))
    back = ScoreTable.from_csv(table.to_csv())
    if len(table):
        assert back == table
    assert back.to_csv() == table.to_csv()


def test_csv_round_trip_recovers_large_doc_count():
    # no word occurs in every document, so the count must come from the idf column
    docs = [[f"u{i}", "common"] for i in range(54321)]
    docs[0] = ["u0"]
    table = build_score_table(Corpus.from_tokens(docs))
    back = ScoreTable.from_csv(table.to_csv())
    assert back.doc_count == 54321
    assert back == table


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("", "empty"),
        ("word,tf\n", "header"),
        ("word,tf,df,idf,tf_idf,log_tf_idf,tcf_unique,tcf_total,adjacency,within\na,x,1,0,0,0,0,0,0,0\n", "line 2"),
        ("word,tf,df,idf,tf_idf,log_tf_idf,tcf_unique,tcf_total,adjacency,within\na,1,1\n", "expected 10"),
    ],
)
def test_csv_parse_errors(text, fragment):
    with pytest.raises(DataError, match=fragment):
        ScoreTable.from_csv(text)
