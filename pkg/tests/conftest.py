import os

import numpy as np
import pytest

from versesim.corpus import Corpus, Document, RawDocument, StopwordList
from versesim.embeddings import DocumentEmbeddingSet

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")


def data_path(name):
    return os.path.join(DATA_DIR, name)


@pytest.fixture
def empty_stoplist():
    return StopwordList(frozenset())


def make_docs(token_lists, prefix="d"):
    return Corpus(
        "test",
        tuple(
            Document("%s%d" % (prefix, i), tuple(toks))
            for i, toks in enumerate(token_lists, start=1)
        ),
    )


def make_raw(texts, prefix="d", collection="test"):
    return Corpus(
        "test",
        tuple(
            RawDocument("%s%d" % (prefix, i), "title %d" % i, collection, text)
            for i, text in enumerate(texts, start=1)
        ),
    )


def random_embeddings(ids, dim, seed, method="external"):
    rng = np.random.default_rng(seed)
    return DocumentEmbeddingSet(method, tuple(ids), rng.normal(0.0, 1.0, (len(ids), dim)))
