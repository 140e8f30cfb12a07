"""Command-line interface.

Subcommands mirror the pipeline stages: ``ingest`` converts raw dumps to
the canonical corpus JSONL, ``eda`` summarises a corpus, ``embed``
produces document embeddings, ``sim`` builds a similarity matrix CSV,
``stats`` runs a single test over matrices, ``hypotheses`` reruns the
statistical stage (reusing cached matrices when present), ``outliers``
extracts extreme pairs, and ``run-all`` executes the whole experiment.
"""

import argparse
import json
import sys

import numpy as np

from versesim import corpus as corpus_mod
from versesim import pipeline as pipeline_mod
from versesim import similarity as sim_mod
from versesim import stats as stats_mod
from versesim import tfidf as tfidf_mod
from versesim import wordvec as wordvec_mod
from versesim.embeddings import load_external_embeddings, write_embeddings_jsonl


def _add_config_flags(parser):
    parser.add_argument("--config", help="TOML experiment configuration")
    parser.add_argument("--seed", type=int, help="sampling/training seed override")
    parser.add_argument("--stopwords", help="stopword file override")
    parser.add_argument("--exclude", help="file of document ids to exclude")
    parser.add_argument("--pretrained-vectors", help="word-vector file (.txt or .bin)")
    parser.add_argument("--external-embeddings", help="external document-embedding JSONL")
    parser.add_argument("--out", help="output directory override")
    parser.add_argument("--alpha", type=float, help="significance level override")
    parser.add_argument("--deterministic", choices=["on", "off"], help="deterministic training mode")
    parser.add_argument("--sonnets", help="first corpus path override")
    parser.add_argument("--songs", help="second corpus path override")
    parser.add_argument("--target-size", type=int, dest="target_size", help="balanced corpus size")


def _config_from_args(args):
    overrides = {
        "seed": args.seed,
        "stopwords": args.stopwords,
        "exclude": args.exclude,
        "pretrained_vectors": args.pretrained_vectors,
        "external_embeddings": args.external_embeddings,
        "out": args.out,
        "alpha": args.alpha,
        "deterministic": args.deterministic,
        "sonnets": args.sonnets,
        "songs": args.songs,
        "target_size": args.target_size,
    }
    return pipeline_mod.load_run_config(args.config, overrides)


def _load_stopwords(path):
    return corpus_mod.load_stopwords(path) if path else corpus_mod.default_stopwords()


def _write_or_print(payload, out):
    text = json.dumps(payload, indent=2, ensure_ascii=False)
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
            fh.write("\n")
    else:
        print(text)


def cmd_ingest(args):
    if args.format == "blocks":
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
        docs = corpus_mod.split_numbered_blocks(
            text, args.header_pattern, id_prefix=args.id_prefix, collection=args.collection
        )
        cor = corpus_mod.Corpus(args.collection, tuple(docs))
    else:
        cor = corpus_mod.parse_corpus_jsonl(args.input)
    corpus_mod.write_corpus_jsonl(cor, args.out)
    print("wrote %d documents to %s" % (len(cor), args.out))


def cmd_eda(args):
    cor = corpus_mod.parse_corpus_jsonl(args.corpus)
    prep = corpus_mod.preprocess_corpus(cor, _load_stopwords(args.stopwords))
    report = corpus_mod.eda(prep, args.top_k)
    _write_or_print(report.to_json_dict(), args.out)


def cmd_embed(args):
    cor = corpus_mod.parse_corpus_jsonl(args.corpus)
    prep = corpus_mod.preprocess_corpus(cor, _load_stopwords(args.stopwords))
    if args.method == "tfidf":
        emb = tfidf_mod.apply_tfidf(tfidf_mod.fit_tfidf(prep), prep)
    elif args.method == "wordvec":
        if args.pretrained_vectors:
            if args.pretrained_vectors.endswith(".bin"):
                table = wordvec_mod.load_word_vectors_binary(args.pretrained_vectors)
            else:
                table = wordvec_mod.load_word_vectors_text(args.pretrained_vectors)
        else:
            params = wordvec_mod.WordVecParams(seed=args.seed if args.seed is not None else 1)
            table = wordvec_mod.train_word_vectors(prep, params)
            if args.save_vectors:
                if args.save_vectors.endswith(".bin"):
                    wordvec_mod.save_word_vectors_binary(table, args.save_vectors)
                else:
                    wordvec_mod.save_word_vectors_text(table, args.save_vectors)
        emb = wordvec_mod.embed_corpus_average(table, prep)
    else:
        if not args.external_embeddings:
            raise SystemExit("--method external requires --external-embeddings")
        emb = load_external_embeddings(args.external_embeddings).subset(prep.ids)
    write_embeddings_jsonl(emb, args.out)
    print("wrote %d %s embeddings (dim %d) to %s" % (len(emb), args.method, emb.dim, args.out))


def cmd_sim(args):
    rows = load_external_embeddings(args.embeddings)
    cols = load_external_embeddings(args.cols_embeddings) if args.cols_embeddings else None
    matrix = sim_mod.similarity_matrix(rows, cols)
    sim_mod.write_matrix_csv(matrix, args.out)
    print("wrote %dx%d %s matrix to %s" % (*matrix.shape, matrix.kind, args.out))


def _load_group(label_eq_path):
    label, _, path = label_eq_path.partition("=")
    if not path:
        raise SystemExit("--matrix expects label=path, got %r" % label_eq_path)
    matrix = sim_mod.read_matrix_csv(path)
    if matrix.kind == sim_mod.SQUARE:
        n = len(matrix.row_ids)
        values = matrix.values[np.triu_indices(n, k=1)]
    else:
        values = matrix.values.ravel()
    return stats_mod.GroupSample(label, values), matrix


def cmd_stats(args):
    groups = []
    matrices = []
    for spec in args.matrix:
        group, matrix = _load_group(spec)
        groups.append(group)
        matrices.append(matrix)
    if args.test == "anova":
        result = stats_mod.one_way_anova(groups).to_json_dict()
    elif args.test == "tukey":
        result = stats_mod.tukey_hsd(groups, args.alpha or 0.05).to_json_dict()
    elif args.test == "mann-whitney":
        if len(groups) != 2:
            raise SystemExit("mann-whitney needs exactly two matrices")
        result = stats_mod.mann_whitney_u(groups[0], groups[1], args.alternative).to_json_dict()
    else:  # wilcoxon: paired cells of two same-shape matrices
        if len(matrices) != 2 or matrices[0].shape != matrices[1].shape:
            raise SystemExit("wilcoxon needs exactly two matrices of identical shape")
        result = stats_mod.wilcoxon_signed_rank(
            matrices[0].values.ravel(),
            matrices[1].values.ravel(),
            labels=(groups[0].label, groups[1].label),
        ).to_json_dict()
    _write_or_print(result, args.out)


def cmd_hypotheses(args):
    config = _config_from_args(args)
    report = pipeline_mod.run_hypotheses(config)
    for entry in report.hypotheses:
        print("%s: p=%.6g -> %s" % (entry.id, entry.p_value, entry.decision))
    print("report written to %s/report.json" % config.out_dir)


def cmd_outliers(args):
    matrix = sim_mod.read_matrix_csv(args.matrix)
    collections = None
    if args.corpus:
        collections = corpus_mod.parse_corpus_jsonl(args.corpus).collections()
    pairs = sim_mod.extreme_pairs(matrix, args.n, args.direction, args.filter, collections)
    payload = [{"row_id": p.row_id, "col_id": p.col_id, "score": p.score} for p in pairs]
    _write_or_print(payload, args.out)


def cmd_run_all(args):
    config = _config_from_args(args)
    report = pipeline_mod.run_all(config)
    for entry in report.hypotheses:
        print("%s: p=%.6g -> %s (%s)" % (entry.id, entry.p_value, entry.decision, entry.direction_note))
    print("artifacts written to %s/" % config.out_dir)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="versesim",
        description="Corpus-similarity laboratory: embeddings, cosine matrices, hypothesis tests.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="convert a raw dump to canonical corpus JSONL")
    p.add_argument("--input", required=True)
    p.add_argument("--format", choices=["jsonl", "blocks"], default="blocks")
    p.add_argument("--header-pattern", default=pipeline_mod.DEFAULT_HEADER_PATTERN)
    p.add_argument("--id-prefix", default="sonnet")
    p.add_argument("--collection", default="sonnets")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("eda", help="summarise a corpus (totals, vocabulary, top words)")
    p.add_argument("--corpus", required=True)
    p.add_argument("--stopwords")
    p.add_argument("--top-k", type=int, default=10)
    p.add_argument("--out")
    p.set_defaults(func=cmd_eda)

    p = sub.add_parser("embed", help="embed a corpus; writes {id, vector} JSONL")
    p.add_argument("--corpus", required=True)
    p.add_argument("--method", choices=["tfidf", "wordvec", "external"], required=True)
    p.add_argument("--stopwords")
    p.add_argument("--seed", type=int)
    p.add_argument("--pretrained-vectors")
    p.add_argument("--external-embeddings")
    p.add_argument("--save-vectors", help="also save the trained word-vector table")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("sim", help="cosine similarity matrix from embedding JSONL")
    p.add_argument("--embeddings", required=True)
    p.add_argument("--cols-embeddings", help="second set for the cross layout")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sim)

    p = sub.add_parser("stats", help="run one test over matrix CSV samples")
    p.add_argument("--test", choices=["anova", "tukey", "mann-whitney", "wilcoxon"], required=True)
    p.add_argument("--matrix", action="append", required=True, metavar="LABEL=PATH")
    p.add_argument("--alpha", type=float)
    p.add_argument("--alternative", choices=["two-sided", "less", "greater"], default="two-sided")
    p.add_argument("--out")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("hypotheses", help="four-hypothesis battery (cached matrices if present)")
    _add_config_flags(p)
    p.set_defaults(func=cmd_hypotheses)

    p = sub.add_parser("outliers", help="extract extreme similarity pairs")
    p.add_argument("--matrix", required=True)
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--direction", choices=["highest", "lowest"], default="highest")
    p.add_argument(
        "--filter",
        choices=["any", "within_rows_collection", "within_cols_collection", "cross_collections"],
        default="any",
    )
    p.add_argument("--corpus", help="corpus JSONL supplying collection tags for filtering")
    p.add_argument("--out")
    p.set_defaults(func=cmd_outliers)

    p = sub.add_parser("run-all", help="full experiment from a config file")
    _add_config_flags(p)
    p.set_defaults(func=cmd_run_all)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except (ValueError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
