"""
The full experiment in one call
===============================

Configure and run the end-to-end pipeline on the demo corpora: balance,
preprocess, embed with TF-IDF and trained word vectors, build all four
matrix layouts, test the four hypotheses, and write every artifact
(EDA summaries, matrix CSVs, figures, outlier reports, report.json).
"""

import json
import os

from versesim import RunConfig, WordVecParams, run_all

HERE = os.path.dirname(__file__)
OUT = os.path.join(HERE, "output")

config = RunConfig(
    sonnets_path=os.path.join(HERE, "data", "toy_sonnets.jsonl"),
    songs_path=os.path.join(HERE, "data", "toy_songs.jsonl"),
    sonnets_name="verse",
    songs_name="lyrics",
    seed=42,
    target_size=8,
    wordvec=WordVecParams(dim=32, window=5, epochs=3, seed=42),
    out_dir=OUT,
)

report = run_all(config)

print("mean similarity by method and dataset:")
for method, per_dataset in report.mean_similarity.items():
    cells = "  ".join("%s=%.4f" % (name, value) for name, value in per_dataset.items())
    print("  %-12s %s" % (method, cells))

print("\nhypothesis outcomes:")
for entry in report.hypotheses:
    print("  %s  p=%-10.4g %-15s %s" % (
        entry.id, entry.p_value, entry.decision, entry.direction_note))

print("\nartifacts in %s:" % OUT)
for name in sorted(os.listdir(OUT)):
    print("  %s" % name)

# everything in report.json is plain JSON for downstream tooling
with open(os.path.join(OUT, "report.json"), encoding="utf-8") as fh:
    payload = json.load(fh)
print("\nreport provenance: %s" % payload["provenance"])
