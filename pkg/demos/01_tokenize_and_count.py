"""
Tokenizing tweets and counting successors
=========================================

Two tiny "tweets" are enough to see every column of a score table.
"""

from stopforge import Corpus, build_score_table, tokenize

# Tweet-oriented normalization: URLs and @mentions vanish, hashtags keep their body.
print(tokenize("The quake hit! http://t.co/x #earthquake @user"))

corpus = Corpus.from_texts(["the quake hit the city", "the quake shook the town"])
table = build_score_table(corpus)

# "the" is followed by quake, city, town: three distinct successors out of four pairs.
# "city" ends its tweet, so it has no successor at all.
for word in ("the", "quake", "city"):
    row = table.row(word)
    print(f"{word:>6}  tf={row['tf']} df={row['df']} idf={row['idf']:.4f} "
          f"tcf_unique={row['tcf_unique']} tcf_total={row['tcf_total']}")

# The whole table as CSV, the format `stopforge analyze` writes.
print(table.to_csv())
