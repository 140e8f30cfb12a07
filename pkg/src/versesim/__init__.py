"""versesim: a corpus-similarity laboratory.

Embed the documents of two contrasting text corpora (TF-IDF, averaged
word vectors, or externally supplied vectors), score all pairs with
cosine similarity in square and cross layouts, and test whether the
score distributions differ (ANOVA + Tukey HSD, Mann-Whitney, Wilcoxon).
"""

from versesim.corpus import (
    Corpus,
    Document,
    EdaReport,
    RawDocument,
    StopwordList,
    default_stopwords,
    eda,
    load_stopwords,
    parse_corpus_jsonl,
    preprocess,
    preprocess_corpus,
    split_numbered_blocks,
    subsample_balanced,
    tokenize,
)
from versesim.embeddings import (
    DocumentEmbeddingSet,
    load_external_embeddings,
    write_embeddings_jsonl,
)
from versesim.errors import FormatError, VersesimError
from versesim.figures import FigureData, emit_bar_svg
from versesim.pipeline import (
    HypothesisReport,
    RunConfig,
    emit_matrix_csv,
    emit_report_json,
    load_run_config,
    run_all,
)
from versesim.similarity import (
    PairScore,
    SimilarityMatrix,
    cosine,
    extreme_pairs,
    mean_score,
    similarity_matrix,
)
from versesim.special import (
    f_cdf,
    ln_gamma,
    normal_cdf,
    reg_incomplete_beta,
    studentized_range_cdf,
)
from versesim.stats import (
    GroupSample,
    TestResult,
    TukeyResult,
    mann_whitney_u,
    one_way_anova,
    tukey_hsd,
    wilcoxon_signed_rank,
)
from versesim.tfidf import TfidfModel, apply_tfidf, fit_tfidf
from versesim.wordvec import (
    EmbeddingTable,
    WordVecParams,
    embed_average,
    embed_corpus_average,
    load_word_vectors_binary,
    load_word_vectors_text,
    save_word_vectors_binary,
    save_word_vectors_text,
    train_word_vectors,
)

__version__ = "0.1.0"

__all__ = [
    "Corpus",
    "Document",
    "DocumentEmbeddingSet",
    "EdaReport",
    "EmbeddingTable",
    "FigureData",
    "FormatError",
    "GroupSample",
    "HypothesisReport",
    "PairScore",
    "RawDocument",
    "RunConfig",
    "SimilarityMatrix",
    "StopwordList",
    "TestResult",
    "TfidfModel",
    "TukeyResult",
    "VersesimError",
    "WordVecParams",
    "apply_tfidf",
    "cosine",
    "default_stopwords",
    "eda",
    "embed_average",
    "embed_corpus_average",
    "emit_bar_svg",
    "emit_matrix_csv",
    "emit_report_json",
    "extreme_pairs",
    "f_cdf",
    "fit_tfidf",
    "ln_gamma",
    "load_external_embeddings",
    "load_run_config",
    "load_stopwords",
    "load_word_vectors_binary",
    "load_word_vectors_text",
    "mann_whitney_u",
    "mean_score",
    "normal_cdf",
    "one_way_anova",
    "parse_corpus_jsonl",
    "preprocess",
    "preprocess_corpus",
    "reg_incomplete_beta",
    "run_all",
    "save_word_vectors_binary",
    "save_word_vectors_text",
    "similarity_matrix",
    "split_numbered_blocks",
    "studentized_range_cdf",
    "subsample_balanced",
    "tokenize",
    "train_word_vectors",
    "tukey_hsd",
    "wilcoxon_signed_rank",
    "write_embeddings_jsonl",
]
