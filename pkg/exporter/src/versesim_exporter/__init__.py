"""Batch document encoder: corpus JSONL in, embedding JSONL out.

Each document's text is tokenized (truncated at ``max_length``), passed
through a pretrained encoder in evaluation mode, and reduced to one
vector: either the attention-mask-weighted mean of the final-layer token
states (default) or the first-position state. Output lines follow corpus
order regardless of batching, and a rerun with the same model revision
produces byte-identical vectors.
"""

import json
import sys
from dataclasses import dataclass

__version__ = "0.1.0"

DEFAULT_MODEL = "bert-base-uncased"
POOLING_MODES = ("mean", "cls")


@dataclass(frozen=True)
class ExportJob:
    corpus_path: str
    output_path: str
    model_name: str = DEFAULT_MODEL
    revision: str = None
    max_length: int = 512
    pooling: str = "mean"
    batch_size: int = 8

    def __post_init__(self):
        if not 1 <= self.max_length <= 512:
            raise ValueError("max_length must lie in 1..512, got %r" % self.max_length)
        if self.pooling not in POOLING_MODES:
            raise ValueError("pooling must be one of %s, got %r" % (POOLING_MODES, self.pooling))
        if self.batch_size < 1:
            raise ValueError("batch_size must be positive")


def read_corpus_jsonl(path):
    """Parse the corpus interchange format: {id, title, collection, text} per line."""
    docs = []
    seen = set()
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValueError("%s:%d: invalid JSON: %s" % (path, lineno, exc)) from exc
            if set(obj) != {"id", "title", "collection", "text"}:
                raise ValueError("%s:%d: not a corpus record" % (path, lineno))
            if obj["id"] in seen:
                raise ValueError("%s:%d: duplicate id %r" % (path, lineno, obj["id"]))
            seen.add(obj["id"])
            docs.append((obj["id"], obj["text"]))
    if not docs:
        raise ValueError("%s: corpus is empty" % path)
    return docs


def _pool(hidden, mask, mode):
    import torch

    if mode == "cls":
        return hidden[:, 0, :]
    mask = mask.unsqueeze(-1).to(hidden.dtype)
    summed = (hidden * mask).sum(dim=1)
    counts = mask.sum(dim=1).clamp(min=1.0)
    return summed / counts


def export_embeddings(job):
    """Run the encoder over the corpus and write the embedding JSONL.

    Returns the number of documents written.
    """
    import torch
    from transformers import AutoModel, AutoTokenizer

    docs = read_corpus_jsonl(job.corpus_path)
    kwargs = {"revision": job.revision} if job.revision else {}
    tokenizer = AutoTokenizer.from_pretrained(job.model_name, **kwargs)
    model = AutoModel.from_pretrained(job.model_name, **kwargs)
    model.eval()

    written = 0
    with open(job.output_path, "w", encoding="utf-8") as out, torch.no_grad():
        for start in range(0, len(docs), job.batch_size):
            batch = docs[start:start + job.batch_size]
            encoded = tokenizer(
                [text for _, text in batch],
                return_tensors="pt",
                truncation=True,
                padding=True,
                max_length=job.max_length,
            )
            hidden = model(**encoded).last_hidden_state
            vectors = _pool(hidden, encoded["attention_mask"], job.pooling)
            for (doc_id, _), vec, mask in zip(batch, vectors, encoded["attention_mask"]):
                # only special tokens present means the document had no
                # encodable content; emit it anyway but say so
                if int(mask.sum()) <= 2:
                    print(
                        "export-embeddings: document %r has no content tokens; "
                        "emitting the empty-sequence embedding" % doc_id,
                        file=sys.stderr,
                    )
                out.write(json.dumps({"id": doc_id, "vector": [float(v) for v in vec]}))
                out.write("\n")
                written += 1
    return written
