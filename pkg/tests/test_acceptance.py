"""Acceptance suite: one test per release criterion, one printed line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the PASS/FAIL
line per criterion. The real-dataset criterion is conditional: it runs
only when VERSESIM_SONNETS and VERSESIM_SONGS point at corpus JSONL
files, and is skipped (not failed) otherwise.
"""

import json
import math
import os
import sys
import time
from contextlib import contextmanager

import numpy as np
import pytest

from conftest import data_path, make_docs, random_embeddings
from versesim.corpus import Document
from versesim.embeddings import DocumentEmbeddingSet, load_external_embeddings
from versesim.similarity import (
    ALL_CELLS,
    UPPER_TRIANGLE,
    cosine,
    mean_score,
    similarity_matrix,
)
from versesim.special import normal_cdf, reg_incomplete_beta, studentized_range_cdf
from versesim.stats import (
    GroupSample,
    mann_whitney_u,
    one_way_anova,
    tukey_hsd,
    wilcoxon_signed_rank,
)
from versesim.tfidf import apply_tfidf, fit_tfidf
from versesim.wordvec import EmbeddingTable, WordVecParams, embed_average, train_word_vectors
from test_wordvec import cluster_cosine_gap, two_cluster_corpus


@contextmanager
def criterion(name):
    try:
        yield
    except BaseException:
        print("[FAIL] %s" % name)
        raise
    print("[PASS] %s" % name)


def test_tfidf_oracle():
    """Toy-corpus cosine matrix matches the hand-computed oracle at 1e-9."""
    with criterion("TF-IDF oracle (3-document corpus, hand formula, <1s)"):
        start = time.perf_counter()
        corpus = make_docs([["a", "b"], ["b", "c"], ["c"]])

        # independent oracle: idf = ln((1+N)/(1+df)) + 1, counts * idf, L2 norm
        idf = {"a": math.log(4 / 2) + 1, "b": math.log(4 / 3) + 1, "c": math.log(4 / 3) + 1}
        raw = [
            {"a": idf["a"], "b": idf["b"]},
            {"b": idf["b"], "c": idf["c"]},
            {"c": idf["c"]},
        ]
        vocab = ("a", "b", "c")
        dense = []
        for weights in raw:
            vec = [weights.get(t, 0.0) for t in vocab]
            norm = math.sqrt(sum(v * v for v in vec))
            dense.append([v / norm for v in vec])
        expected = [
            [sum(u * v for u, v in zip(a, b)) for b in dense] for a in dense
        ]

        model = fit_tfidf(corpus)
        matrix = similarity_matrix(apply_tfidf(model, corpus))
        assert list(model.vocabulary) == list(vocab)
        for i in range(3):
            for j in range(3):
                assert abs(matrix.values[i][j] - expected[i][j]) <= 1e-9, (i, j)
        # frozen spot values of the oracle itself
        assert abs(expected[0][1] - 0.4280460350631186) <= 1e-12
        assert abs(expected[1][2] - 0.7071067811865476) <= 1e-12
        assert time.perf_counter() - start < 1.0


def test_cosine_properties():
    """1000 random pairs: symmetry, bounds, self-similarity, scaling."""
    with criterion("cosine properties on 1000 random vector pairs"):
        rng = np.random.default_rng(424242)
        for _ in range(1000):
            dim = int(rng.integers(2, 40))
            u = rng.normal(0, 1, dim)
            v = rng.normal(0, 1, dim)
            s_uv = cosine(u, v)
            assert s_uv == cosine(v, u)  # symmetry, exact
            assert abs(s_uv) <= 1.0 + 1e-12
            assert abs(cosine(u, u) - 1.0) <= 1e-12
            alpha = float(rng.uniform(0.1, 50.0))
            assert abs(cosine(alpha * u, v) - s_uv) <= 1e-12


def test_stats_regression_corpus():
    """All 20 frozen oracle cases match: p within 1e-6, Tukey p within 1e-3."""
    with criterion("stats regression corpus (20 oracle cases)"):
        with open(data_path("stats_regression.json"), encoding="utf-8") as fh:
            cases = json.load(fh)["cases"]
        assert len(cases) == 20
        seen_closed_form = False
        for case in cases:
            kind = case["kind"]
            if kind == "anova":
                groups = [GroupSample(str(i), np.array(g))
                          for i, g in enumerate(case["groups"])]
                result = one_way_anova(groups)
                assert abs(result.p_value - case["expected"]["p_value"]) <= 1e-6, case["name"]
                if case["name"] == "closed_form_f3":
                    seen_closed_form = True
                    assert abs(result.statistic - 3.0) <= 1e-9
                    assert result.df == (2.0, 6.0)
                    assert abs(result.p_value - 0.125) <= 1e-9
            elif kind == "tukey":
                groups = [GroupSample(str(i), np.array(g))
                          for i, g in enumerate(case["groups"])]
                by_pair = {(p.label_a, p.label_b): p for p in tukey_hsd(groups).pairs}
                for expected in case["expected"]["pairs"]:
                    pair = by_pair[(str(expected["a"]), str(expected["b"]))]
                    assert abs(pair.p_adj - expected["p_adj"]) <= 1e-3, case["name"]
            elif kind == "mann_whitney":
                result = mann_whitney_u(GroupSample("x", np.array(case["x"])),
                                        GroupSample("y", np.array(case["y"])))
                assert abs(result.p_value - case["expected"]["p_value"]) <= 1e-6, case["name"]
            else:
                result = wilcoxon_signed_rank(np.array(case["x"]), np.array(case["y"]))
                assert abs(result.p_value - case["expected"]["p_value"]) <= 1e-6, case["name"]
        assert seen_closed_form


def test_special_functions():
    """Spot values of the beta, normal, and studentized-range functions."""
    with criterion("special functions (beta, normal CDF, studentized range)"):
        assert abs(reg_incomplete_beta(3.0, 1.0, 0.5) - 0.125) <= 1e-10
        assert normal_cdf(0.0) == 0.5
        oracle = 0.9502759407251427  # independent high-precision reference
        mine = studentized_range_cdf(3.49, 3, 30.0)
        assert abs(mine - 0.95) <= 5e-3
        assert abs(mine - oracle) <= 1e-6


def test_word_vector_training_property():
    """Two-cluster corpus: intra beats inter cosine by >= 0.1, bit-stable, <60s."""
    with criterion("word-vector training property (cluster gap, reproducibility, <60s)"):
        start = time.perf_counter()
        corpus = two_cluster_corpus(n_sent=220, seed=7)
        params = WordVecParams(dim=32, window=5, min_count=1,
                               negatives=5, epochs=5, initial_lr=0.025, seed=99)
        table_one = train_word_vectors(corpus, params)
        gap = cluster_cosine_gap(table_one)
        assert gap >= 0.1, gap
        table_two = train_word_vectors(corpus, params)
        for token in table_one.entries:
            assert np.array_equal(table_one.entries[token], table_two.entries[token])
        assert time.perf_counter() - start < 60.0


def test_averaging_rule():
    """OOV tokens count as zero vectors in the averaging denominator."""
    with criterion("averaging rule ((1,0) + OOV zero) / 2 exact"):
        table = EmbeddingTable(2, {"w1": np.array([1.0, 0.0], dtype=np.float32)})
        result = embed_average(table, Document("d", ("w1", "unseen")))
        assert result[0] == 0.5 and result[1] == 0.0


def test_matrix_layouts():
    """154+154 documents give a 308x308 combined and 154x154 distinct matrix."""
    with criterion("matrix layouts (combined 308x308, distinct 154x154, mean identity)"):
        sonnet_ids = ["sonnet-%d" % i for i in range(1, 155)]
        song_ids = ["song-%d" % i for i in range(1, 155)]
        sonnets = random_embeddings(sonnet_ids, 24, seed=60)
        songs = random_embeddings(song_ids, 24, seed=61)
        combined = DocumentEmbeddingSet(
            "external", sonnets.ids + songs.ids, np.vstack([sonnets.matrix, songs.matrix]))

        square = similarity_matrix(combined)
        distinct = similarity_matrix(sonnets, songs)
        assert square.shape == (308, 308)
        assert distinct.shape == (154, 154)
        assert all(r.startswith("sonnet-") for r in distinct.row_ids)
        assert all(c.startswith("song-") for c in distinct.col_ids)

        cross_block_mean = float(np.mean(square.values[:154, 154:]))
        assert abs(mean_score(distinct, ALL_CELLS) - cross_block_mean) <= 1e-12


REAL_SONNETS = os.environ.get("VERSESIM_SONNETS")
REAL_SONGS = os.environ.get("VERSESIM_SONGS")


@pytest.mark.skipif(
    not (REAL_SONNETS and REAL_SONGS),
    reason="real corpora not supplied (set VERSESIM_SONNETS and VERSESIM_SONGS)",
)
def test_real_datasets_directional():
    """Dataset-conditional: Table-1 diversity band and H1/H3 directions."""
    from versesim.pipeline import RunConfig, run_all

    with criterion("real-dataset directional reproduction (<5 min)"):
        start = time.perf_counter()
        out = "acceptance_run_out"
        config = RunConfig(
            sonnets_path=REAL_SONNETS,
            songs_path=REAL_SONGS,
            sonnets_name="shakespeare",
            songs_name="swift",
            seed=42,
            target_size=154,
            out_dir=out,
        )
        report = run_all(config)

        with open(os.path.join(out, "eda_shakespeare.json"), encoding="utf-8") as fh:
            shakespeare_eda = json.load(fh)
        with open(os.path.join(out, "eda_swift.json"), encoding="utf-8") as fh:
            swift_eda = json.load(fh)
        assert abs(shakespeare_eda["lexical_diversity"] - 0.1729) <= 0.02
        assert abs(swift_eda["lexical_diversity"] - 0.0656) <= 0.02

        h1 = report.hypotheses[0]
        assert h1.decision == "reject_null"
        tfidf_means = report.mean_similarity["tfidf"]
        assert tfidf_means["swift"] > tfidf_means["shakespeare"]
        assert tfidf_means["swift"] > tfidf_means["combined"]

        h3 = report.hypotheses[2]
        assert h3.decision == "reject_null"
        assert (report.mean_similarity["avg_wordvec"]["distinct"]
                > report.mean_similarity["tfidf"]["distinct"])

        assert time.perf_counter() - start < 300.0


def test_primary_suite_standalone():
    """External-embedding handling works from committed fixtures alone."""
    with criterion("primary suite independent of the secondary component"):
        emb = load_external_embeddings(data_path("external_768.jsonl"))
        assert emb.dim == 768 and len(emb) == 2
        matrix = similarity_matrix(emb)
        assert abs(matrix.values[0, 0] - 1.0) <= 1e-9
        # the library must not drag in the exporter's ML stack
        assert "transformers" not in sys.modules
        toy = load_external_embeddings(data_path("external_toy.jsonl"))
        assert len(toy) == 17
        assert mean_score(similarity_matrix(toy), UPPER_TRIANGLE) <= 1.0
