"""Command-line interface.

Exit codes: 0 success, 1 configuration or parse failure, 2 unknown word
at query time.
"""

from __future__ import annotations

import argparse
import logging
import re
import sys
from pathlib import Path

from . import kernels
from .backends import Backends, ic_from_corpus, read_stopwords
from .config import load_config
from .errors import OutOfVocabulary, SemsimError, UnknownTerm, UnknownWord
from .evaluation import evaluate, load_concept_set, load_reference
from .lsa import build_matrix, load_corpus, train
from .wordnet_io import dump_simple_taxonomy

log = logging.getLogger("semsim")

EXIT_OK, EXIT_CONFIG, EXIT_UNKNOWN = 0, 1, 2

_OVERRIDES = (
    ("--taxonomy", "taxonomy", str, "simple-format taxonomy file"),
    ("--wordnet-data", "wordnet_data", str, "WordNet data.<pos> file"),
    ("--wordnet-index", "wordnet_index", str, "WordNet index.<pos> file"),
    ("--wordnet-pos", "wordnet_pos", str, "part of speech to load (default n)"),
    ("--ic-corpus", "ic_corpus", str, "corpus for information content"),
    ("--ic-table", "ic_table", str, "precomputed IC table (TSV)"),
    ("--lsa-corpus", "lsa_corpus", str, "corpus for the default LSA space"),
    ("--lsa-space", "lsa_space", str, "saved LSA space for the default space"),
    ("--k", "lsa_k", int, "LSA dimensions"),
    ("--weighting", "lsa_weighting", str, "LSA weighting: raw or log_entropy"),
    ("--stopwords", "stopwords", str, "whitespace-separated stopword file"),
    ("--seed", "seed", int, "random seed (default 42)"),
    ("--output-dir", "output_dir", str, "report directory"),
    ("--sweep-start", "sweep_start", float, None),
    ("--sweep-end", "sweep_end", float, None),
    ("--sweep-step", "sweep_step", float, None),
)


def _common_parser():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--config", help="key=value config file (default: $SEMSIM_CONFIG)")
    p.add_argument("-v", "--verbose", action="count", default=0)
    for flag, dest, typ, help_ in _OVERRIDES:
        p.add_argument(flag, dest=dest, type=typ, help=help_)
    return p


def build_parser():
    common = _common_parser()
    parser = argparse.ArgumentParser(prog="semsim", description="Semantic similarity toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sim", parents=[common], help="score one label pair")
    p.add_argument("measure", help="wup, jcn, lsa or lsa:<id>")
    p.add_argument("label1")
    p.add_argument("label2")

    p = sub.add_parser("eval", parents=[common], help="threshold-sweep evaluation against a reference")
    p.add_argument("set_a")
    p.add_argument("set_b")
    p.add_argument("reference")
    p.add_argument("--measures", default=None, help="comma-separated measures (default: all configured)")

    p = sub.add_parser("train-lsa", parents=[common], help="train and save an LSA space")
    p.add_argument("corpus")
    p.add_argument("--out", required=True)

    p = sub.add_parser("build-ic", parents=[common], help="build and save an IC table")
    p.add_argument("corpus")
    p.add_argument("--out", required=True)

    p = sub.add_parser("parse-wordnet", parents=[common], help="load a taxonomy and print a summary")
    p.add_argument("--dump", help="write the taxonomy in simple format to this path")
    return parser


def _config(args):
    overrides = {dest: getattr(args, dest) for _, dest, _, _ in _OVERRIDES}
    return load_config(args.config, overrides)


def cmd_sim(args, out):
    backends = Backends(_config(args))
    measure = backends.measure(args.measure)
    try:
        score = measure.score(args.label1, args.label2)
    except (UnknownWord, OutOfVocabulary, UnknownTerm) as exc:
        word = getattr(exc, "word", None) or getattr(exc, "term", None)
        print(f"semsim: unknown word: {word}", file=sys.stderr)
        return EXIT_UNKNOWN
    print(f"{score:.6f}", file=out)
    return EXIT_OK


def _safe(name):
    return re.sub(r"[^A-Za-z0-9_.-]+", "-", name)


def cmd_eval(args, out):
    cfg = _config(args)
    backends = Backends(cfg)
    set_a = load_concept_set(args.set_a)
    set_b = load_concept_set(args.set_b)
    reference = load_reference(args.reference, set_a, set_b)
    names = args.measures.split(",") if args.measures else backends.configured_measures()
    names = [n.strip() for n in names if n.strip()]
    if not names:
        print("semsim: no measures configured", file=sys.stderr)
        return EXIT_CONFIG
    reports = []
    for name in names:
        measure = backends.measure(name)
        report = evaluate(set_a, set_b, reference, measure, **cfg.sweep)
        report.metadata["seed"] = cfg.seed
        report.metadata["kernel_backend"] = kernels.BACKEND
        stem = f"{_safe(set_a.domain_name)}__{_safe(set_b.domain_name)}__{_safe(measure.tag)}"
        csv_path, _ = report.write(cfg.output_dir, stem)
        reports.append((measure.tag, report, csv_path))
    print(f"{'measure':<16} {'best_t':>8} {'recall':>9} {'precision':>9} {'f_measure':>9}", file=out)
    for tag, report, _ in sorted(reports, key=lambda r: (-r[1].best_row().f_measure, r[0])):
        best = report.best_row()
        print(f"{tag:<16} {best.threshold:>8.2f} {best.recall:>9.6f} {best.precision:>9.6f} {best.f_measure:>9.6f}",
              file=out)
    for _, _, path in reports:
        log.info("wrote %s", path)
    return EXIT_OK


def cmd_train_lsa(args, out):
    cfg = _config(args)
    corpus = load_corpus(args.corpus)
    matrix = build_matrix(corpus, cfg.lsa_weighting, read_stopwords(cfg.stopwords))
    space = train(matrix, cfg.lsa_k, seed=cfg.seed)
    space.save(args.out)
    top = " ".join(f"{s:.6f}" for s in space.singular_values[:5])
    print(f"k={space.k} vocabulary={len(space.vocabulary)} top_singular_values={top}", file=out)
    return EXIT_OK


def cmd_build_ic(args, out):
    cfg = _config(args)
    taxonomy = Backends(cfg).taxonomy()
    if not Path(args.corpus).exists():
        raise OSError(f"no such corpus: {args.corpus}")
    table = ic_from_corpus(taxonomy, args.corpus, read_stopwords(cfg.stopwords))
    table.save(args.out)
    print(f"synsets={len(table.ic)} root_ic={table.ic[taxonomy.root]:.6f}", file=out)
    return EXIT_OK


def cmd_parse_wordnet(args, out):
    t = Backends(_config(args)).taxonomy()
    print(f"synsets={len(t)}", file=out)
    print(f"edges={len(t.edges())}", file=out)
    print(f"lemmas={len(t.lemma_index)}", file=out)
    print(f"root={t.root}", file=out)
    print(f"max_depth={t.max_depth()}", file=out)
    print(f"source_checksum={getattr(t, 'source_checksum', '')}", file=out)
    print(f"checksum={t.checksum}", file=out)
    if args.dump:
        Path(args.dump).write_text(dump_simple_taxonomy(t), encoding="utf-8")
    return EXIT_OK


COMMANDS = {
    "sim": cmd_sim,
    "eval": cmd_eval,
    "train-lsa": cmd_train_lsa,
    "build-ic": cmd_build_ic,
    "parse-wordnet": cmd_parse_wordnet,
}


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args, out)
    except (UnknownWord, OutOfVocabulary) as exc:
        print(f"semsim: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (SemsimError, OSError, ValueError) as exc:
        print(f"semsim: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
