"""
Adjacency and within-keyword frequencies
========================================

With a keyword set, every word gets two more counts: how often it sits inside a
keyword occurrence and how often it sits right next to one.
"""

from stopforge import Corpus, KeywordSet, build_score_table

corpus = Corpus.from_texts([
    "the linear models in the linear models",
    "linear models fit the data",
])
keywords = KeywordSet.from_phrases(["linear models"])
table = build_score_table(corpus, keywords)

for word in table.words:
    row = table.row(word)
    print(f"{word:>7}  adjacency={row['adjacency']} within={row['within']} rake={row['rake']:+d}")
