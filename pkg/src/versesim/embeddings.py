"""Per-document embedding sets and the external-embedding interchange format.

A DocumentEmbeddingSet maps document ids to dense vectors of one fixed
dimensionality, produced by exactly one method. Externally computed
embeddings (e.g. from a contextual encoder) are ingested from JSONL with
one ``{"id": ..., "vector": [...]}`` object per line.
"""

import json
import math
from dataclasses import dataclass

import numpy as np

from versesim.errors import FormatError

METHODS = ("tfidf", "avg_wordvec", "external")


@dataclass(frozen=True)
class DocumentEmbeddingSet:
    """Dense document vectors, one per id, all of the same dimension."""

    method: str
    ids: tuple
    matrix: np.ndarray  # shape (len(ids), dim), float64

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError("unknown embedding method %r (expected one of %s)" % (self.method, METHODS))
        if self.matrix.ndim != 2 or self.matrix.shape[0] != len(self.ids):
            raise ValueError(
                "matrix shape %s does not match %d ids" % (self.matrix.shape, len(self.ids))
            )
        if len(set(self.ids)) != len(self.ids):
            raise ValueError("duplicate document ids in embedding set")
        if not np.all(np.isfinite(self.matrix)):
            raise ValueError("embedding matrix contains non-finite values")

    @property
    def dim(self):
        return self.matrix.shape[1]

    def __len__(self):
        return len(self.ids)

    def vector(self, doc_id):
        try:
            row = self.ids.index(doc_id)
        except ValueError:
            raise KeyError("no embedding for document %r" % doc_id) from None
        return self.matrix[row]

    def subset(self, ids):
        """New set restricted to ``ids``, in the order given."""
        index = {doc_id: i for i, doc_id in enumerate(self.ids)}
        missing = [doc_id for doc_id in ids if doc_id not in index]
        if missing:
            raise KeyError("no embedding for documents: %s" % missing[:5])
        rows = [index[doc_id] for doc_id in ids]
        return DocumentEmbeddingSet(self.method, tuple(ids), self.matrix[rows].copy())

    def zero_vector_count(self):
        """Number of documents whose embedding is identically zero."""
        return int(np.sum(~np.any(self.matrix != 0.0, axis=1)))


def load_external_embeddings(path):
    """Read externally computed document embeddings from JSONL.

    Dimensionality is inferred from the first line; inconsistent
    dimensions, duplicate ids, and non-finite values raise FormatError.
    """
    ids = []
    rows = []
    seen = set()
    dim = None
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise FormatError("%s:%d: invalid JSON: %s" % (path, lineno, exc)) from exc
            if not isinstance(obj, dict) or set(obj) != {"id", "vector"}:
                raise FormatError('%s:%d: expected {"id", "vector"} object' % (path, lineno))
            doc_id, vec = obj["id"], obj["vector"]
            if not isinstance(doc_id, str) or not doc_id:
                raise FormatError("%s:%d: id must be a non-empty string" % (path, lineno))
            if doc_id in seen:
                raise FormatError("%s:%d: duplicate document id %r" % (path, lineno, doc_id))
            if not isinstance(vec, list) or not all(isinstance(v, (int, float)) for v in vec):
                raise FormatError("%s:%d: vector must be an array of numbers" % (path, lineno))
            if dim is None:
                dim = len(vec)
                if dim == 0:
                    raise FormatError("%s:%d: zero-length vector" % (path, lineno))
            elif len(vec) != dim:
                raise FormatError(
                    "%s:%d: vector length %d does not match dimension %d inferred from line 1"
                    % (path, lineno, len(vec), dim)
                )
            if not all(math.isfinite(v) for v in vec):
                raise FormatError("%s:%d: non-finite value in vector" % (path, lineno))
            seen.add(doc_id)
            ids.append(doc_id)
            rows.append(vec)
    if dim is None:
        raise FormatError("%s: no embeddings found" % path)
    return DocumentEmbeddingSet("external", tuple(ids), np.array(rows, dtype=np.float64))


def write_embeddings_jsonl(emb_set, path):
    """Write a DocumentEmbeddingSet in the external-embedding JSONL format."""
    with open(path, "w", encoding="utf-8") as fh:
        for doc_id, row in zip(emb_set.ids, emb_set.matrix):
            fh.write(json.dumps({"id": doc_id, "vector": [float(v) for v in row]}))
            fh.write("\n")
