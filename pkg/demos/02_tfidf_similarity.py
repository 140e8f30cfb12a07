"""
TF-IDF document vectors and cosine similarity matrices
======================================================

Fit the TF-IDF weighting on a combined corpus, embed every document,
build the square (all pairs) and cross (verse rows x lyric columns)
similarity layouts, and pull out the most and least similar pairs.
"""

import os

from versesim import (
    Corpus,
    apply_tfidf,
    default_stopwords,
    extreme_pairs,
    fit_tfidf,
    mean_score,
    parse_corpus_jsonl,
    preprocess_corpus,
    similarity_matrix,
)

HERE = os.path.dirname(__file__)

stopwords = default_stopwords()
verse = preprocess_corpus(
    parse_corpus_jsonl(os.path.join(HERE, "data", "toy_sonnets.jsonl"), name="verse"),
    stopwords)
lyrics = preprocess_corpus(
    parse_corpus_jsonl(os.path.join(HERE, "data", "toy_songs.jsonl"), name="lyrics"),
    stopwords)

# one shared vector space: fit on everything, then slice per corpus
combined = Corpus("combined", tuple(verse.documents) + tuple(lyrics.documents))
model = fit_tfidf(combined)
print("vocabulary size: %d terms" % len(model.vocabulary))

embeddings = apply_tfidf(model, combined)
verse_emb = embeddings.subset(verse.ids)
lyric_emb = embeddings.subset(lyrics.ids)

# square layout: every document against every other
square = similarity_matrix(embeddings)
print("combined square matrix: %dx%d, mean off-diagonal %.4f" % (
    *square.shape, mean_score(square, "upper_triangle_excl_diag")))

# cross layout: verse rows, lyric columns only
cross = similarity_matrix(verse_emb, lyric_emb)
print("cross matrix: %dx%d, mean %.4f" % (
    *cross.shape, mean_score(cross, "all_cells")))

# outlier pairs, the qualitative view
print("\nmost similar pairs (square layout):")
for pair in extreme_pairs(square, 3, "highest"):
    print("  %-10s %-10s %.4f" % (pair.row_id, pair.col_id, pair.score))

print("least similar cross-corpus pairs:")
for pair in extreme_pairs(cross, 3, "lowest"):
    print("  %-10s %-10s %.4f" % (pair.row_id, pair.col_id, pair.score))

# same-collection pairs only, using the collection tags
collections = {doc_id: "verse" for doc_id in verse.ids}
collections.update({doc_id: "lyrics" for doc_id in lyrics.ids})
within = extreme_pairs(square, 3, "highest", "within_rows_collection", collections)
print("most similar same-collection pairs:")
for pair in within:
    print("  %-10s %-10s %.4f" % (pair.row_id, pair.col_id, pair.score))
