"""Independent reference computations used by the tests.

Nothing here imports the counting or scoring code under test.
"""

import math
from collections import defaultdict


def naive_counts(docs):
    """tf, df, successor_types, successor_tokens from an explicit triple list."""
    triples = []
    for toks in docs:
        for p in range(len(toks) - 1):
            triples.append((p, toks[p], toks[p + 1]))
    vocab = sorted({t for toks in docs for t in toks})
    out = {}
    for w in vocab:
        tf = sum(1 for toks in docs for t in toks if t == w)
        df = sum(1 for toks in docs if w in toks)
        succ = [nxt for (_, first, nxt) in triples if first == w]
        out[w] = (tf, df, len(set(succ)), len(succ))
    return out


def naive_rake(docs, phrases):
    """Adjacency/within by brute force over every start position, same matching rule."""
    phrases = sorted(set(tuple(p) for p in phrases), key=len, reverse=True)
    adj, within = defaultdict(int), defaultdict(int)
    for toks in docs:
        spans, i = [], 0
        while i < len(toks):
            hit = next((p for p in phrases if tuple(toks[i : i + len(p)]) == p), None)
            if hit:
                spans.append(range(i, i + len(hit)))
                i += len(hit)
            else:
                i += 1
        covered = {j for s in spans for j in s}
        for s in spans:
            for j in s:
                within[toks[j]] += 1
            for j in (s.start - 1, s.stop):
                if 0 <= j < len(toks) and j not in covered:
                    adj[toks[j]] += 1
    return dict(adj), dict(within)


def naive_prf(generated, reference):
    g, r = set(generated), set(reference)
    inter = len(g & r)
    p = inter / len(g) if g else 0.0
    rec = inter / len(r) if r else 0.0
    return p, rec


def sorted_prefix(scores, k, high_is_stop=True):
    """Top-k words by full sort: score (oriented) descending, then word ascending."""
    sign = 1 if high_is_stop else -1
    ranked = sorted(scores, key=lambda w: (-sign * scores[w], w))
    return ranked[:k]


def ln(x):
    return math.log(x)
