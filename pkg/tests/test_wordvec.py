import numpy as np
import pytest

from conftest import make_docs
from versesim._rng import Xoshiro256
from versesim.corpus import Corpus, Document
from versesim.errors import FormatError
from versesim.similarity import cosine
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


def two_cluster_corpus(n_sent=220, vocab_per_cluster=20, seed=7):
    """Sentences drawing only from one of two disjoint token pools."""
    rng = Xoshiro256(seed)
    docs = []
    for prefix in ("red", "blue"):
        pool = ["%s%d" % (prefix, i) for i in range(vocab_per_cluster)]
        for s in range(n_sent):
            length = 8 + rng.next_below(5)
            sent = tuple(pool[rng.next_below(len(pool))] for _ in range(length))
            docs.append(Document("%s-%d" % (prefix, s), sent))
    return Corpus("clusters", tuple(docs))


def cluster_cosine_gap(table, prefix_a="red", prefix_b="blue"):
    first = [v for t, v in table.entries.items() if t.startswith(prefix_a)]
    second = [v for t, v in table.entries.items() if t.startswith(prefix_b)]
    intra, inter = [], []
    for group in (first, second):
        for i in range(len(group)):
            for j in range(i + 1, len(group)):
                intra.append(cosine(group[i], group[j]))
    for u in first:
        for v in second:
            inter.append(cosine(u, v))
    return float(np.mean(intra)) - float(np.mean(inter))


class TestParams:
    def test_defaults_match_documented_values(self):
        p = WordVecParams()
        assert (p.dim, p.window, p.min_count, p.negatives, p.epochs, p.initial_lr) == (
            100, 5, 1, 5, 5, 0.025)

    @pytest.mark.parametrize("field,value", [
        ("dim", 0), ("window", 0), ("min_count", 0), ("negatives", 0),
        ("epochs", -1), ("initial_lr", 0.0),
    ])
    def test_invalid_params_rejected(self, field, value):
        with pytest.raises(ValueError):
            WordVecParams(**{field: value})


class TestTraining:
    def test_returned_vectors_have_requested_dim(self):
        cor = make_docs([["a", "b", "c", "a"], ["b", "c", "d"]])
        table = train_word_vectors(cor, WordVecParams(dim=100, epochs=1, seed=5))
        assert table.dim == 100
        assert all(len(v) == 100 for v in table.entries.values())

    def test_min_count_thresholds_vocabulary(self):
        cor = make_docs([["a", "a", "a", "b"]])
        table = train_word_vectors(cor, WordVecParams(dim=8, min_count=2, epochs=1, seed=5))
        assert set(table.entries) == {"a"}

    def test_empty_vocabulary_errors(self):
        cor = make_docs([["a", "b"]])
        with pytest.raises(ValueError, match="min_count"):
            train_word_vectors(cor, WordVecParams(dim=8, min_count=3, seed=5))

    def test_deterministic_bit_reproducible(self):
        cor = two_cluster_corpus(n_sent=30)
        params = WordVecParams(dim=16, epochs=2, seed=123)
        a = train_word_vectors(cor, params)
        b = train_word_vectors(cor, params)
        assert set(a.entries) == set(b.entries)
        for tok in a.entries:
            assert np.array_equal(a.entries[tok], b.entries[tok])

    def test_seed_changes_vectors(self):
        cor = two_cluster_corpus(n_sent=20)
        a = train_word_vectors(cor, WordVecParams(dim=16, epochs=1, seed=1))
        b = train_word_vectors(cor, WordVecParams(dim=16, epochs=1, seed=2))
        assert any(not np.array_equal(a.entries[t], b.entries[t]) for t in a.entries)

    def test_two_cluster_separation(self):
        table = train_word_vectors(
            two_cluster_corpus(), WordVecParams(dim=32, epochs=5, seed=99)
        )
        assert cluster_cosine_gap(table) >= 0.1

    def test_single_token_vocab_trains_without_hanging(self):
        cor = make_docs([["a", "a", "a", "a"]])
        table = train_word_vectors(cor, WordVecParams(dim=4, epochs=1, seed=5))
        assert set(table.entries) == {"a"}

    def test_unpreprocessed_corpus_errors(self):
        from conftest import make_raw
        with pytest.raises(ValueError, match="not preprocessed"):
            train_word_vectors(make_raw(["hello world"]), WordVecParams(dim=4, seed=1))


class TestEmbedAverage:
    def _table(self):
        return EmbeddingTable(2, {
            "w1": np.array([1.0, 0.0], dtype=np.float32),
            "w2": np.array([0.0, 1.0], dtype=np.float32),
        })

    def test_arithmetic_mean(self):
        assert np.array_equal(embed_average(self._table(), ["w1", "w2"]), [0.5, 0.5])

    def test_oov_counts_in_denominator(self):
        result = embed_average(self._table(), ["w1", "oov"])
        assert np.array_equal(result, [0.5, 0.0])

    def test_empty_tokens_zero_vector(self):
        assert np.array_equal(embed_average(self._table(), []), [0.0, 0.0])

    def test_order_invariant(self):
        t = self._table()
        a = embed_average(t, ["w1", "w2", "w1"])
        b = embed_average(t, ["w1", "w1", "w2"])
        assert np.array_equal(a, b)

    def test_constant_tokens_reproduce_vector_exactly(self):
        t = self._table()
        for reps in (1, 2, 3, 7):
            assert np.array_equal(embed_average(t, ["w2"] * reps), [0.0, 1.0])

    def test_accepts_document(self):
        doc = Document("d", ("w1", "w2"))
        assert np.array_equal(embed_average(self._table(), doc), [0.5, 0.5])

    def test_scaling_table_scales_average_and_keeps_cosine(self):
        rng = np.random.default_rng(4)
        table = EmbeddingTable(6, {
            "t%d" % i: rng.normal(0, 1, 6).astype(np.float32) for i in range(10)
        })
        alpha = 4.0  # power of two: scaling is exact in floating point
        scaled = EmbeddingTable(6, {t: alpha * v for t, v in table.entries.items()})
        tokens = ["t1", "t3", "t3", "t7", "oov"]
        base = embed_average(table, tokens)
        scaled_avg = embed_average(scaled, tokens)
        assert np.allclose(scaled_avg, alpha * base, rtol=1e-12)
        other = embed_average(table, ["t2", "t5"])
        other_scaled = embed_average(scaled, ["t2", "t5"])
        assert cosine(base, other) == pytest.approx(cosine(scaled_avg, other_scaled), abs=1e-12)

    def test_corpus_average_set(self):
        cor = make_docs([["w1"], ["w1", "w2"], []])
        emb = embed_corpus_average(self._table(), cor)
        assert emb.method == "avg_wordvec"
        assert emb.ids == cor.ids
        assert np.array_equal(emb.matrix[2], [0.0, 0.0])
        assert emb.zero_vector_count() == 1


class TestVectorFileFormats:
    def _sample_table(self):
        rng = np.random.default_rng(11)
        return EmbeddingTable(5, {
            tok: rng.normal(0, 0.3, 5).astype(np.float32)
            for tok in ("alpha", "beta", "can't", "élève")
        })

    def test_text_literal_parse(self, tmp_path):
        path = tmp_path / "v.txt"
        path.write_text("2 3\nfoo 1 0 0\nbar 0 1 0\n")
        table = load_word_vectors_text(path)
        assert table.dim == 3
        assert np.array_equal(table.entries["foo"], [1, 0, 0])
        assert np.array_equal(table.entries["bar"], [0, 1, 0])

    def test_text_round_trip_identical(self, tmp_path):
        table = self._sample_table()
        path = tmp_path / "v.txt"
        save_word_vectors_text(table, path)
        loaded = load_word_vectors_text(path)
        assert loaded.dim == table.dim
        assert list(loaded.entries) == list(table.entries)
        for tok in table.entries:
            assert np.array_equal(loaded.entries[tok], table.entries[tok])

    def test_binary_round_trip_identical(self, tmp_path):
        table = self._sample_table()
        path = tmp_path / "v.bin"
        save_word_vectors_binary(table, path)
        loaded = load_word_vectors_binary(path)
        for tok in table.entries:
            assert np.array_equal(loaded.entries[tok], table.entries[tok])

    def test_formats_agree_through_round_trips(self, tmp_path):
        table = self._sample_table()
        t_path, b_path = tmp_path / "v.txt", tmp_path / "v.bin"
        save_word_vectors_text(table, t_path)
        save_word_vectors_binary(load_word_vectors_text(t_path), b_path)
        final = load_word_vectors_binary(b_path)
        for tok in table.entries:
            dev = np.max(np.abs(final.entries[tok].astype(np.float64)
                                - table.entries[tok].astype(np.float64)))
            assert dev <= 1e-6

    def test_header_count_mismatch(self, tmp_path):
        path = tmp_path / "v.txt"
        path.write_text("3 3\nfoo 1 0 0\nbar 0 1 0\n")
        with pytest.raises(FormatError, match="promises 3"):
            load_word_vectors_text(path)

    def test_non_numeric_value_names_line(self, tmp_path):
        path = tmp_path / "v.txt"
        path.write_text("1 3\nfoo 1 zero 0\n")
        with pytest.raises(FormatError, match=":2"):
            load_word_vectors_text(path)

    def test_duplicate_token_text(self, tmp_path):
        path = tmp_path / "v.txt"
        path.write_text("2 2\nfoo 1 0\nfoo 0 1\n")
        with pytest.raises(FormatError, match="duplicate"):
            load_word_vectors_text(path)

    def test_wrong_field_count(self, tmp_path):
        path = tmp_path / "v.txt"
        path.write_text("1 3\nfoo 1 0\n")
        with pytest.raises(FormatError, match="fields"):
            load_word_vectors_text(path)

    def test_binary_truncated_vector(self, tmp_path):
        path = tmp_path / "v.bin"
        with open(path, "wb") as fh:
            fh.write(b"1 3\nfoo ")
            fh.write(b"\x00" * 8)  # only 2 of 3 floats
        with pytest.raises(FormatError, match="truncated"):
            load_word_vectors_binary(path)

    def test_binary_trailing_garbage(self, tmp_path):
        table = EmbeddingTable(2, {"a": np.zeros(2, dtype=np.float32)})
        path = tmp_path / "v.bin"
        save_word_vectors_binary(table, path)
        with open(path, "ab") as fh:
            fh.write(b"extra")
        with pytest.raises(FormatError, match="trailing"):
            load_word_vectors_binary(path)

    def test_binary_exact_layout(self, tmp_path):
        # header ASCII, token bytes, 0x20, little-endian float32s
        table = EmbeddingTable(2, {"ab": np.array([1.0, -2.0], dtype=np.float32)})
        path = tmp_path / "v.bin"
        save_word_vectors_binary(table, path)
        data = path.read_bytes()
        assert data.startswith(b"1 2\nab ")
        floats = np.frombuffer(data[len(b"1 2\nab "):len(b"1 2\nab ") + 8], dtype="<f4")
        assert np.array_equal(floats, [1.0, -2.0])

    def test_whitespace_token_rejected_on_save(self, tmp_path):
        table = EmbeddingTable(1, {"bad token": np.zeros(1, dtype=np.float32)})
        with pytest.raises(ValueError, match="whitespace"):
            save_word_vectors_text(table, tmp_path / "v.txt")

    def test_table_dim_mismatch_rejected(self):
        with pytest.raises(ValueError):
            EmbeddingTable(3, {"a": np.zeros(2, dtype=np.float32)})
