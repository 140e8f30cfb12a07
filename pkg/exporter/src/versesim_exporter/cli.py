"""export-embeddings command line entry point."""

import argparse
import sys
from importlib import resources

from versesim_exporter import DEFAULT_MODEL, ExportJob, export_embeddings


def read_lockfile():
    """Pinned model/revision pairs from the packaged lockfile."""
    text = resources.files("versesim_exporter").joinpath("model.lock").read_text("utf-8")
    pins = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#") or "=" not in line:
            continue
        key, _, value = line.partition("=")
        pins[key.strip()] = value.strip()
    return pins


def build_parser():
    parser = argparse.ArgumentParser(
        prog="export-embeddings",
        description="Encode corpus documents with a pretrained encoder into embedding JSONL.",
    )
    parser.add_argument("--corpus", required=True, help="corpus JSONL (id/title/collection/text)")
    parser.add_argument("--out", required=True, help="output embedding JSONL")
    parser.add_argument("--pooling", choices=["mean", "cls"], default="mean")
    parser.add_argument("--max-length", type=int, default=512)
    parser.add_argument("--model", default=DEFAULT_MODEL,
                        help="model name or local path (default: %(default)s)")
    parser.add_argument("--revision", help="model revision; defaults to the lockfile pin")
    parser.add_argument("--batch-size", type=int, default=8)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    revision = args.revision
    if revision is None and args.model == read_lockfile().get("model"):
        revision = read_lockfile().get("revision")
    job = ExportJob(
        corpus_path=args.corpus,
        output_path=args.out,
        model_name=args.model,
        revision=revision,
        max_length=args.max_length,
        pooling=args.pooling,
        batch_size=args.batch_size,
    )
    try:
        count = export_embeddings(job)
    except (ValueError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    print("wrote %d embeddings to %s (pooling=%s)" % (count, args.out, args.pooling))
    return 0


if __name__ == "__main__":
    sys.exit(main())
