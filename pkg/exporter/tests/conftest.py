import json

import pytest
import torch
from transformers import BertConfig, BertModel, BertTokenizer

VOCAB = [
    "[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]",
    "the", "a", "river", "sings", "quiet", "song", "tonight", "golden",
    "leaves", "drift", "down", "lane", "lantern", "burns", "velvet",
    "dark", "stars", "morning", "came", "we", "counted", "until",
]


@pytest.fixture(scope="session")
def local_model_dir(tmp_path_factory):
    """A saved BERT-architecture model with random weights, hidden size 768.

    The hosted encoder is not reachable from the test environment; the
    exporter only needs a model directory that from_pretrained accepts.
    """
    model_dir = tmp_path_factory.mktemp("tiny-bert")
    torch.manual_seed(0)
    config = BertConfig(
        vocab_size=len(VOCAB),
        hidden_size=768,
        num_hidden_layers=2,
        num_attention_heads=4,
        intermediate_size=128,
        max_position_embeddings=512,
    )
    BertModel(config).save_pretrained(model_dir)
    vocab_file = model_dir / "vocab.txt"
    vocab_file.write_text("\n".join(VOCAB) + "\n")
    BertTokenizer(str(vocab_file)).save_pretrained(model_dir)
    return str(model_dir)


def corpus_row(doc_id, text):
    return {"id": doc_id, "title": doc_id, "collection": "c", "text": text}


@pytest.fixture
def corpus_file(tmp_path):
    """Five documents: two share text, one is very long, one has no content."""
    rows = [
        corpus_row("doc-1", "the river sings a quiet song tonight"),
        corpus_row("doc-2", "golden leaves drift down the lane"),
        corpus_row("doc-3", "the river sings a quiet song tonight"),  # duplicate of doc-1
        corpus_row("doc-4", " ".join(["stars"] * 700)),  # exceeds max_length
        corpus_row("doc-5", " "),  # no encodable content
    ]
    path = tmp_path / "corpus.jsonl"
    with open(path, "w", encoding="utf-8") as fh:
        for row in rows:
            fh.write(json.dumps(row) + "\n")
    return str(path)
