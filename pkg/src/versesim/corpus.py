"""Corpus loading, preprocessing, balancing, and exploratory statistics.

A corpus starts life as raw documents (id, title, collection, untouched
text), gets tokenized into lowercase content tokens, and can be balanced
against a second corpus by seeded random subsampling. ``eda`` summarises a
tokenized corpus (word totals, vocabulary size, lexical diversity, top
content words).
"""

import json
import re
import unicodedata
from collections import Counter
from dataclasses import dataclass
from importlib import resources

from versesim._rng import Xoshiro256
from versesim.errors import FormatError

_CORPUS_KEYS = {"id", "title", "collection", "text"}

# A candidate token is a maximal run of letters, digits and apostrophes.
# The typographic apostrophe is accepted and folded to ASCII so stopword
# matching works on curly-quoted text.
_TOKEN_RE = re.compile(r"(?:[^\W_]|['’])+")


@dataclass(frozen=True)
class RawDocument:
    """One source document, text untouched."""

    id: str
    title: str
    collection: str
    text: str


@dataclass(frozen=True)
class Document:
    """A document reduced to its ordered post-preprocessing tokens."""

    id: str
    tokens: tuple


@dataclass(frozen=True)
class Corpus:
    """An ordered collection of documents with unique ids.

    ``documents`` holds RawDocument before preprocessing and Document
    after; ordering is stable across runs.
    """

    name: str
    documents: tuple

    def __post_init__(self):
        seen = set()
        for doc in self.documents:
            if not doc.id:
                raise ValueError("corpus %r contains a document with an empty id" % self.name)
            if doc.id in seen:
                raise ValueError("corpus %r contains duplicate id %r" % (self.name, doc.id))
            seen.add(doc.id)

    def __len__(self):
        return len(self.documents)

    def __iter__(self):
        return iter(self.documents)

    @property
    def ids(self):
        return tuple(doc.id for doc in self.documents)

    def collections(self):
        """Mapping id -> collection tag (raw corpora only)."""
        return {doc.id: doc.collection for doc in self.documents}


@dataclass(frozen=True)
class StopwordList:
    words: frozenset

    def __post_init__(self):
        for w in self.words:
            if w != w.lower():
                raise ValueError("stopword %r is not lowercase" % w)

    def __contains__(self, token):
        return token in self.words


@dataclass(frozen=True)
class EdaReport:
    """Corpus summary: token totals, vocabulary, diversity, top words."""

    total_words: int
    vocabulary_size: int
    lexical_diversity: float
    top_content_words: tuple

    def to_json_dict(self):
        return {
            "total_words": self.total_words,
            "vocabulary_size": self.vocabulary_size,
            "lexical_diversity": self.lexical_diversity,
            "top_content_words": [[t, c] for t, c in self.top_content_words],
        }


def load_stopwords(path):
    """Read a stopword file: one lowercase word per line, '#' comments."""
    words = set()
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            word = line.strip()
            if not word or word.startswith("#"):
                continue
            words.add(word.lower())
    return StopwordList(frozenset(words))


def default_stopwords():
    """The packaged 179-word English stopword list."""
    text = resources.files("versesim").joinpath("data/stopwords_en.txt").read_text("utf-8")
    words = {
        line.strip().lower()
        for line in text.splitlines()
        if line.strip() and not line.startswith("#")
    }
    return StopwordList(frozenset(words))


def parse_corpus_jsonl(path, name=None):
    """Load a corpus from JSONL with keys exactly {id, title, collection, text}.

    Raises FormatError naming the line for malformed lines and duplicate
    ids. An empty file yields an empty corpus.
    """
    docs = []
    seen = set()
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise FormatError("%s:%d: invalid JSON: %s" % (path, lineno, exc)) from exc
            if not isinstance(obj, dict) or set(obj) != _CORPUS_KEYS:
                raise FormatError(
                    "%s:%d: expected object with keys exactly %s"
                    % (path, lineno, sorted(_CORPUS_KEYS))
                )
            if not all(isinstance(obj[k], str) for k in _CORPUS_KEYS):
                raise FormatError("%s:%d: all fields must be strings" % (path, lineno))
            if not obj["id"]:
                raise FormatError("%s:%d: empty document id" % (path, lineno))
            if not obj["text"]:
                raise FormatError("%s:%d: empty text for id %r" % (path, lineno, obj["id"]))
            if obj["id"] in seen:
                raise FormatError("%s:%d: duplicate document id %r" % (path, lineno, obj["id"]))
            seen.add(obj["id"])
            docs.append(RawDocument(obj["id"], obj["title"], obj["collection"], obj["text"]))
    if name is None:
        name = _stem(path)
    return Corpus(name, tuple(docs))


def write_corpus_jsonl(corpus, path):
    """Serialize raw documents back to the canonical JSONL format."""
    with open(path, "w", encoding="utf-8") as fh:
        for doc in corpus.documents:
            fh.write(
                json.dumps(
                    {
                        "id": doc.id,
                        "title": doc.title,
                        "collection": doc.collection,
                        "text": doc.text,
                    },
                    ensure_ascii=False,
                )
            )
            fh.write("\n")


def split_numbered_blocks(text, header_pattern, id_prefix="sonnet", collection="sonnets"):
    """Split a raw dump into one document per numbered block.

    ``header_pattern`` is a regex matched against whole stripped lines;
    each match starts a new block. Ids are ``<id_prefix>-<n>`` numbered by
    order of appearance, titles are the header lines themselves. Text
    before the first header is ignored.
    """
    header = re.compile(header_pattern)
    blocks = []
    current = None
    for line in text.splitlines():
        stripped = line.strip()
        if stripped and header.fullmatch(stripped):
            current = (stripped, [])
            blocks.append(current)
        elif current is not None:
            current[1].append(line)
    if not blocks:
        raise ValueError("no blocks matched header pattern %r" % header_pattern)
    docs = []
    for n, (title, lines) in enumerate(blocks, start=1):
        body = "\n".join(lines).strip()
        if not body:
            raise ValueError("block %r (#%d) has no text" % (title, n))
        docs.append(RawDocument("%s-%d" % (id_prefix, n), title, collection, body))
    return docs


def tokenize(text):
    """Lowercased content tokens of ``text``.

    NFC-normalizes, lowercases, then takes maximal runs of
    letters/digits/apostrophes, strips edge apostrophes, and drops tokens
    without a letter. Stopwords are NOT removed here.
    """
    text = unicodedata.normalize("NFC", text).lower()
    tokens = []
    for match in _TOKEN_RE.finditer(text):
        tok = match.group().replace("’", "'").strip("'")
        if tok and any(ch.isalpha() for ch in tok):
            tokens.append(tok)
    return tokens


def preprocess(raw, stopwords):
    """Tokenize a raw document and drop stopwords; may yield zero tokens."""
    tokens = [t for t in tokenize(raw.text) if t not in stopwords]
    return Document(raw.id, tuple(tokens))


def preprocess_corpus(corpus, stopwords):
    return Corpus(corpus.name, tuple(preprocess(doc, stopwords) for doc in corpus.documents))


def subsample_balanced(larger, target_size, seed):
    """Keep a uniform random ``target_size``-document subset of ``larger``.

    Deterministic for a fixed seed; document order is preserved in the
    kept corpus. Returns ``(kept_corpus, excluded_ids)``.
    """
    n = len(larger.documents)
    if target_size > n:
        raise ValueError(
            "target size %d exceeds corpus size %d (%r)" % (target_size, n, larger.name)
        )
    rng = Xoshiro256(seed)
    kept_idx = set(rng.sample_indices(n, target_size))
    kept, excluded = [], []
    for i, doc in enumerate(larger.documents):
        (kept if i in kept_idx else excluded).append(doc)
    return Corpus(larger.name, tuple(kept)), [doc.id for doc in excluded]


def exclude_ids(corpus, ids):
    """Drop the given ids from a corpus (for pinning a known exclusion list)."""
    ids = set(ids)
    unknown = ids - set(corpus.ids)
    if unknown:
        raise ValueError("exclusion list names unknown ids: %s" % sorted(unknown))
    kept = tuple(doc for doc in corpus.documents if doc.id not in ids)
    return Corpus(corpus.name, kept), [doc.id for doc in corpus.documents if doc.id in ids]


def eda(corpus, k=10):
    """Summarise a preprocessed corpus: totals, vocabulary, top-k words.

    Ties in the top-word list are broken lexicographically. Lexical
    diversity is vocabulary_size / total_words.
    """
    if not corpus.documents:
        raise ValueError("cannot run EDA on an empty corpus")
    counts = Counter()
    for doc in corpus.documents:
        if not isinstance(doc, Document):
            raise ValueError("corpus %r is not preprocessed" % corpus.name)
        counts.update(doc.tokens)
    total = sum(counts.values())
    if total == 0:
        raise ValueError("corpus %r has no tokens after preprocessing" % corpus.name)
    top = sorted(counts.items(), key=lambda item: (-item[1], item[0]))[:k]
    return EdaReport(
        total_words=total,
        vocabulary_size=len(counts),
        lexical_diversity=len(counts) / total,
        top_content_words=tuple(top),
    )


def _stem(path):
    name = str(path).replace("\\", "/").rsplit("/", 1)[-1]
    return name.rsplit(".", 1)[0] if "." in name else name
