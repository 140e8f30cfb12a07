"""TF-IDF document vectors.

Weighting is raw term count times smoothed inverse document frequency,
idf(t) = ln((1 + N) / (1 + df(t))) + 1, with the final vector
L2-normalized (zero vectors are left as-is). This is the behaviour of the
standard reference vectorizer with default settings.
"""

import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from versesim.embeddings import DocumentEmbeddingSet


@dataclass(frozen=True)
class TfidfModel:
    vocabulary: dict  # token -> column index, lexicographic order
    idf: np.ndarray  # per-token idf, aligned with vocabulary indices
    n_docs: int

    def __post_init__(self):
        if len(self.idf) != len(self.vocabulary):
            raise ValueError("idf length does not match vocabulary size")


def fit_tfidf(corpus):
    """Fit vocabulary and idf weights on a preprocessed corpus."""
    if not corpus.documents:
        raise ValueError("cannot fit TF-IDF on an empty corpus")
    df = Counter()
    total = 0
    for doc in corpus.documents:
        total += len(doc.tokens)
        df.update(set(doc.tokens))
    if total == 0:
        raise ValueError("corpus %r has zero total tokens" % corpus.name)
    vocab = {tok: i for i, tok in enumerate(sorted(df))}
    n = len(corpus.documents)
    idf = np.empty(len(vocab))
    for tok, i in vocab.items():
        idf[i] = math.log((1.0 + n) / (1.0 + df[tok])) + 1.0
    return TfidfModel(vocab, idf, n)


def apply_tfidf(model, corpus):
    """Embed each document as its L2-normalized count-times-idf vector.

    Out-of-vocabulary tokens are ignored; documents with no in-vocabulary
    tokens get zero vectors.
    """
    matrix = np.zeros((len(corpus.documents), len(model.vocabulary)))
    for row, doc in enumerate(corpus.documents):
        for tok, count in Counter(doc.tokens).items():
            col = model.vocabulary.get(tok)
            if col is not None:
                matrix[row, col] = count * model.idf[col]
        norm = np.linalg.norm(matrix[row])
        if norm > 0.0:
            matrix[row] /= norm
    return DocumentEmbeddingSet("tfidf", corpus.ids, matrix)
