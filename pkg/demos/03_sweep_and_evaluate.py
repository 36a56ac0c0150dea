"""
Comparing measures on a corpus with planted function words
==========================================================

A synthetic corpus plants 20 function words among Zipf-distributed content
words. Each measure is swept over ten cutoffs and scored against the planted set,
giving the same F-measure-vs-threshold curves a real study would plot.
"""

from fractions import Fraction

from stopforge import MEASURES, SweepConfig, build_score_table, evaluate, generate_top_fraction, sweep
from stopforge.evaluation import ReferenceList, best_cutoff, sweep_report
from stopforge.synth import SynthConfig, generate

corpus, truth = generate(SynthConfig(seed=42, n_docs=2000))
table = build_score_table(corpus)
planted = ReferenceList("planted", truth.planted_stop_words)
print(f"{corpus.doc_count} documents, {len(table)} distinct words")

# no keyword set here, so every rake score would be zero
measures = tuple(m for m in MEASURES if m != "rake")
rows = sweep_report(sweep(table, SweepConfig(measures, steps=10)), planted)

print(f"{'measure':<11}" + "".join(f"{k * 5:>6}%" for k in range(1, 11)))
for measure in measures:
    f1 = [r.f1 for r in rows if r.measure == measure]
    print(f"{measure:<11}" + "".join(f"{v:7.3f}" for v in f1))

print("best by precision:", best_cutoff(rows, "precision"))
print("best by F1:       ", best_cutoff(rows, "f1"))

# Precision of the 20 highest-scoring words for each high-is-stopword measure.
for measure in ("tcf_unique", "tcf_total", "tf"):
    top = generate_top_fraction(table, measure, Fraction(20, len(table)))
    print(f"{measure:<11} top-20 precision {evaluate(top, planted).precision:.2f}")
