"""
Loading, preprocessing, and exploring two corpora
=================================================

Parse the bundled demo corpora from JSONL, tokenize them with the default
stopword list, balance their sizes by seeded subsampling, and print the
exploratory statistics (token totals, vocabulary, lexical diversity, top
content words).
"""

import os

from versesim import (
    default_stopwords,
    eda,
    parse_corpus_jsonl,
    preprocess_corpus,
    subsample_balanced,
)

HERE = os.path.dirname(__file__)

# load the two raw corpora (canonical JSONL: id / title / collection / text)
verse = parse_corpus_jsonl(os.path.join(HERE, "data", "toy_sonnets.jsonl"), name="verse")
lyrics = parse_corpus_jsonl(os.path.join(HERE, "data", "toy_songs.jsonl"), name="lyrics")
print("loaded %d verse documents and %d lyric documents" % (len(verse), len(lyrics)))

# the lyrics corpus is larger; sample it down so both sides are equal
lyrics, excluded = subsample_balanced(lyrics, target_size=len(verse), seed=42)
print("balanced lyrics to %d documents (excluded: %s)" % (len(lyrics), ", ".join(excluded)))

# preprocessing: NFC, lowercase, tokenize, drop stopwords and letterless tokens
stopwords = default_stopwords()
print("stopword list carries %d entries" % len(stopwords.words))

for corpus in (verse, lyrics):
    prepared = preprocess_corpus(corpus, stopwords)
    report = eda(prepared, k=8)
    print("\n--- %s ---" % corpus.name)
    print("total words:       %d" % report.total_words)
    print("vocabulary size:   %d" % report.vocabulary_size)
    print("lexical diversity: %.4f" % report.lexical_diversity)
    print("top content words: %s" % ", ".join(
        "%s (%d)" % (token, count) for token, count in report.top_content_words))
