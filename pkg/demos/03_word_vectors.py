"""
Training word vectors and averaging them into document vectors
===============================================================

Train CBOW negative-sampling vectors on a synthetic corpus with two
disjoint topic clusters, check that the clusters separate in cosine
space, round-trip the table through the text and binary file formats,
and average token vectors into document embeddings.
"""

import numpy as np

from versesim import (
    Corpus,
    Document,
    WordVecParams,
    cosine,
    embed_average,
    load_word_vectors_binary,
    load_word_vectors_text,
    save_word_vectors_binary,
    save_word_vectors_text,
    train_word_vectors,
)
from versesim._rng import Xoshiro256

# build the synthetic corpus: "sea" words never co-occur with "city" words
rng = Xoshiro256(2024)
documents = []
for cluster in ("sea", "city"):
    pool = ["%s%02d" % (cluster, i) for i in range(15)]
    for n in range(150):
        tokens = tuple(pool[rng.next_below(len(pool))] for _ in range(10))
        documents.append(Document("%s-%d" % (cluster, n), tokens))
corpus = Corpus("clusters", tuple(documents))

params = WordVecParams(dim=32, window=5, min_count=1, negatives=5, epochs=5, seed=7)
table = train_word_vectors(corpus, params)
print("trained %d vectors of dimension %d" % (len(table), table.dim))

# words from the same cluster should be far more similar than across clusters
sea = table.entries["sea00"]
print("cosine(sea00, sea01)  = %+.3f" % cosine(sea, table.entries["sea01"]))
print("cosine(sea00, city01) = %+.3f" % cosine(sea, table.entries["city01"]))

# the classic text and binary formats round-trip exactly
save_word_vectors_text(table, "demo_vectors.txt")
save_word_vectors_binary(table, "demo_vectors.bin")
from_text = load_word_vectors_text("demo_vectors.txt")
from_binary = load_word_vectors_binary("demo_vectors.bin")
drift = max(
    float(np.max(np.abs(from_text.entries[t] - from_binary.entries[t])))
    for t in table.entries
)
print("max text/binary round-trip drift: %g" % drift)

# document embedding = mean of token vectors; unknown tokens count as zeros
doc = Document("mixed", ("sea00", "sea03", "not-in-vocabulary"))
vector = embed_average(table, doc)
print("averaged document vector norm: %.3f (OOV token diluted it)" % np.linalg.norm(vector))
print("pure-cluster document stays close to its words: %+.3f" % cosine(
    embed_average(table, Document("pure", ("sea00", "sea03"))), sea))
