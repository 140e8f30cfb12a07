"""Word vectors: CBOW negative-sampling training, file IO, and averaging.

The trainer predicts each center word from the mean of its context
vectors, contrasting it against noise words drawn from a unigram
distribution raised to the 0.75 power. Training is single-threaded and
bit-reproducible for a fixed seed. Document vectors are plain averages of
token vectors, with out-of-vocabulary tokens contributing zero vectors
but still counting in the denominator.

Tables round-trip through the classic word-vector formats: a text form
("count dim" header, then one "token v1 ... v_dim" line per entry) and a
binary form (same ASCII header, then token bytes, a space, and dim
little-endian float32 values per entry, newline optional).
"""

from collections import Counter
from dataclasses import dataclass

import numpy as np

from versesim._rng import Xoshiro256
from versesim.embeddings import DocumentEmbeddingSet
from versesim.errors import FormatError

_NOISE_POWER = 0.75
_LR_FLOOR_RATIO = 1e-4
_MAX_NEGATIVE_REDRAWS = 30


@dataclass(frozen=True)
class WordVecParams:
    dim: int = 100
    window: int = 5
    min_count: int = 1
    negatives: int = 5
    epochs: int = 5
    initial_lr: float = 0.025
    seed: int = 1

    def __post_init__(self):
        for name in ("dim", "window", "min_count", "negatives", "epochs"):
            if getattr(self, name) < 1:
                raise ValueError("%s must be positive, got %r" % (name, getattr(self, name)))
        if not self.initial_lr > 0.0:
            raise ValueError("initial_lr must be positive, got %r" % self.initial_lr)


@dataclass(frozen=True)
class EmbeddingTable:
    """token -> vector map with fixed dimensionality (float32 entries)."""

    dim: int
    entries: dict

    def __post_init__(self):
        if self.dim <= 0:
            raise ValueError("dimension must be positive, got %r" % self.dim)
        for tok, vec in self.entries.items():
            if len(vec) != self.dim:
                raise ValueError(
                    "vector for %r has length %d, expected %d" % (tok, len(vec), self.dim)
                )

    def __contains__(self, token):
        return token in self.entries

    def __len__(self):
        return len(self.entries)


def train_word_vectors(corpus, params):
    """Train CBOW word vectors with negative sampling on a tokenized corpus.

    Vocabulary keeps tokens occurring at least ``min_count`` times. Each
    center position uses a window width drawn uniformly from 1..window,
    and the learning rate decays linearly from ``initial_lr`` to
    ``initial_lr / 1e4`` over epochs x tokens updates. Weight matrices are
    initialized uniformly in [-0.5/dim, 0.5/dim] from the seed, and the
    input-matrix rows are returned.
    """
    counts = Counter()
    sentences_tokens = []
    for doc in corpus.documents:
        if not hasattr(doc, "tokens"):
            raise ValueError("corpus %r is not preprocessed" % corpus.name)
        counts.update(doc.tokens)
        sentences_tokens.append(doc.tokens)

    # most-frequent-first ordering, ties alphabetical, for stable indices
    vocab_tokens = sorted(
        (tok for tok, c in counts.items() if c >= params.min_count),
        key=lambda tok: (-counts[tok], tok),
    )
    if not vocab_tokens:
        raise ValueError(
            "no token in corpus %r reaches min_count=%d" % (corpus.name, params.min_count)
        )
    index = {tok: i for i, tok in enumerate(vocab_tokens)}

    noise = np.array([counts[tok] for tok in vocab_tokens], dtype=np.float64) ** _NOISE_POWER
    noise_cum = np.cumsum(noise / noise.sum())
    noise_cum[-1] = 1.0

    sentences = [
        np.array([index[t] for t in toks if t in index], dtype=np.int64)
        for toks in sentences_tokens
    ]
    total_updates = params.epochs * sum(len(s) for s in sentences)

    rng = Xoshiro256(params.seed)
    dim = params.dim
    n_vocab = len(vocab_tokens)
    w_in = np.array(
        [[(rng.next_float() - 0.5) / dim for _ in range(dim)] for _ in range(n_vocab)]
    )
    w_out = np.array(
        [[(rng.next_float() - 0.5) / dim for _ in range(dim)] for _ in range(n_vocab)]
    )

    lr0 = params.initial_lr
    lr_floor = lr0 * _LR_FLOOR_RATIO
    labels = np.zeros(params.negatives + 1)
    labels[0] = 1.0

    update = 0
    for _ in range(params.epochs):
        for sent in sentences:
            n = len(sent)
            for pos in range(n):
                lr = lr0 + (lr_floor - lr0) * (update / total_updates)
                update += 1
                span = 1 + rng.next_below(params.window)
                center = sent[pos]
                context = np.concatenate(
                    (sent[max(0, pos - span):pos], sent[pos + 1:pos + 1 + span])
                )
                if len(context) == 0:
                    continue
                h = w_in[context].mean(axis=0)

                rows = [center]
                for _slot in range(params.negatives):
                    for _try in range(_MAX_NEGATIVE_REDRAWS):
                        j = int(np.searchsorted(noise_cum, rng.next_float(), side="right"))
                        if j != center:
                            rows.append(j)
                            break
                rows = np.array(rows, dtype=np.int64)

                out = w_out[rows]
                f = 1.0 / (1.0 + np.exp(-np.clip(out @ h, -60.0, 60.0)))
                g = (labels[: len(rows)] - f) * lr
                np.add.at(w_out, rows, g[:, None] * h[None, :])
                # classic CBOW applies the full input-side error to every
                # context vector (no division by context size)
                np.add.at(w_in, context, g @ out)

    entries = {tok: w_in[index[tok]].astype(np.float32) for tok in vocab_tokens}
    return EmbeddingTable(dim, entries)


def embed_average(table, doc_or_tokens):
    """Mean of the token vectors; OOV tokens count as zero vectors.

    The denominator is the total token count including OOV tokens, and an
    empty document maps to the zero vector.
    """
    tokens = getattr(doc_or_tokens, "tokens", doc_or_tokens)
    vec = np.zeros(table.dim)
    for tok in tokens:
        entry = table.entries.get(tok)
        if entry is not None:
            vec += entry
    return vec / len(tokens) if tokens else vec


def embed_corpus_average(table, corpus):
    matrix = np.array([embed_average(table, doc) for doc in corpus.documents])
    if matrix.size == 0:
        matrix = matrix.reshape(0, table.dim)
    return DocumentEmbeddingSet("avg_wordvec", corpus.ids, matrix)


def save_word_vectors_text(table, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("%d %d\n" % (len(table.entries), table.dim))
        for tok, vec in table.entries.items():
            _check_token(tok)
            fh.write(tok)
            for v in vec:
                fh.write(" %.9g" % float(v))
            fh.write("\n")


def load_word_vectors_text(path):
    with open(path, encoding="utf-8") as fh:
        header = fh.readline()
        count, dim = _parse_header(header.split(), path, "line 1")
        entries = {}
        for lineno, line in enumerate(fh, start=2):
            if not line.strip():
                continue
            parts = line.rstrip("\n").split(" ")
            if len(parts) != dim + 1:
                raise FormatError(
                    "%s:%d: expected token + %d values, got %d fields"
                    % (path, lineno, dim, len(parts))
                )
            tok = parts[0]
            if tok in entries:
                raise FormatError("%s:%d: duplicate token %r" % (path, lineno, tok))
            try:
                vec = np.array([float(p) for p in parts[1:]], dtype=np.float32)
            except ValueError as exc:
                raise FormatError("%s:%d: non-numeric value: %s" % (path, lineno, exc)) from exc
            entries[tok] = vec
    if len(entries) != count:
        raise FormatError(
            "%s: header promises %d entries but file has %d" % (path, count, len(entries))
        )
    return EmbeddingTable(dim, entries)


def save_word_vectors_binary(table, path):
    with open(path, "wb") as fh:
        fh.write(("%d %d\n" % (len(table.entries), table.dim)).encode("ascii"))
        for tok, vec in table.entries.items():
            _check_token(tok)
            fh.write(tok.encode("utf-8"))
            fh.write(b" ")
            fh.write(np.asarray(vec, dtype="<f4").tobytes())
            fh.write(b"\n")


def load_word_vectors_binary(path):
    with open(path, "rb") as fh:
        data = fh.read()
    nl = data.find(b"\n")
    if nl < 0:
        raise FormatError("%s: missing header line" % path)
    count, dim = _parse_header(data[:nl].split(), path, "header")
    entries = {}
    pos = nl + 1
    vec_bytes = 4 * dim
    for _ in range(count):
        while pos < len(data) and data[pos:pos + 1] == b"\n":
            pos += 1
        sep = data.find(b" ", pos)
        if sep < 0:
            raise FormatError(
                "%s: byte %d: expected 'token<space>' for entry %d"
                % (path, pos, len(entries) + 1)
            )
        try:
            tok = data[pos:sep].decode("utf-8")
        except UnicodeDecodeError as exc:
            raise FormatError("%s: byte %d: token is not UTF-8: %s" % (path, pos, exc)) from exc
        if tok in entries:
            raise FormatError("%s: byte %d: duplicate token %r" % (path, pos, tok))
        start = sep + 1
        if start + vec_bytes > len(data):
            raise FormatError(
                "%s: byte %d: truncated vector for token %r" % (path, start, tok)
            )
        vec = np.frombuffer(data[start:start + vec_bytes], dtype="<f4").copy()
        if not np.all(np.isfinite(vec.astype(np.float64))):
            raise FormatError("%s: byte %d: non-finite value for token %r" % (path, start, tok))
        entries[tok] = vec
        pos = start + vec_bytes
    if data[pos:].strip(b"\n"):
        raise FormatError(
            "%s: byte %d: trailing data after the %d entries promised by the header"
            % (path, pos, count)
        )
    return EmbeddingTable(dim, entries)


def _parse_header(fields, path, where):
    if len(fields) != 2:
        raise FormatError("%s: %s: header must be 'count dim'" % (path, where))
    try:
        count, dim = int(fields[0]), int(fields[1])
    except ValueError as exc:
        raise FormatError("%s: %s: non-numeric header: %s" % (path, where, exc)) from exc
    if count < 0 or dim <= 0:
        raise FormatError("%s: %s: invalid header values %d %d" % (path, where, count, dim))
    return count, dim


def _check_token(tok):
    if not tok or any(ch.isspace() for ch in tok):
        raise ValueError("token %r cannot be serialized (empty or contains whitespace)" % tok)
