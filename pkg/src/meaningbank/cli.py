"""Command-line driver for the annotation pipeline and the service.

Commands mirror the pipeline stages: segment, semtag, symbolize, parse,
interpret, project, plus bank inspection (status, stats), model training
(train-segmenter, train-lexicon) and the HTTP service (serve).  Exit codes:
0 success, 1 pipeline failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .bank import Bank, DocumentId, LAYERS, token_table
from .chartparser import NoParseError, to_sexpr
from .composer import TemplateError
from .drs import clausal
from .pipeline import (
    AppConfig, ConfigError, interpret_doc, parse_doc, project_doc,
    reannotate_doc, segment_doc, semtag_doc, symbolize_doc,
)
from .projector import VERIFIED
from .segmenter import TrainConfig, decode, labels_to_tokens, train
from .semtagger import train_lexicon
from .terms import ComposeError, KindError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="meaningbank",
        description="compositional semantics pipeline and annotation bank")
    parser.add_argument("--bank", default=None,
                        help="bank root (default: $MEANINGBANK_HOME or ./bank)")
    parser.add_argument("--config", default=None,
                        help="JSON config with per-language model paths")
    sub = parser.add_subparsers(dest="command", required=True)

    def doc_args(p, lang_default="en"):
        p.add_argument("--part", help="two-digit corpus part, e.g. 00")
        p.add_argument("--doc", type=int, help="document number")
        p.add_argument("--lang", default=lang_default)

    doc_args(sub.add_parser("segment", help="character-level segmentation"))
    doc_args(sub.add_parser("semtag", help="assign semantic tags"))
    doc_args(sub.add_parser("symbolize", help="assign non-logical symbols"))
    doc_args(sub.add_parser("parse", help="build the CCG derivation"))
    doc_args(sub.add_parser("interpret", help="compose the sentence box"))

    p = sub.add_parser("project", help="project annotations to a translation")
    p.add_argument("--part", required=True)
    p.add_argument("--doc", type=int, required=True)
    p.add_argument("--source-lang", default="en")
    p.add_argument("--target-lang", required=True)
    p.add_argument("--verify", action="store_true",
                   help="exit 1 unless every sentence verifies")

    p = sub.add_parser("reannotate", help="rerun the pipeline, collect conflicts")
    doc_args(p)

    p = sub.add_parser("status", help="layer statuses for a document")
    p.add_argument("--part", required=True)
    p.add_argument("--doc", type=int, required=True)
    p.add_argument("--lang")

    sub.add_parser("stats", help="corpus statistics table")

    p = sub.add_parser("train-segmenter", help="train a segmentation model")
    p.add_argument("--texts", required=True, help="one document per line")
    p.add_argument("--labels", required=True,
                   help="one label string per line, same lengths")
    p.add_argument("--out", required=True)
    p.add_argument("--epochs", type=int, default=12)
    p.add_argument("--seed", type=int, default=1)

    p = sub.add_parser("train-lexicon", help="aggregate a semtag lexicon")
    p.add_argument("--annotations", required=True,
                   help="TSV of language, surface, semtag")
    p.add_argument("--out", required=True)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8765)
    return parser


def bank_root(args) -> Path:
    if args.bank:
        return Path(args.bank)
    return Path(os.environ.get("MEANINGBANK_HOME", "bank"))


def document(args) -> DocumentId:
    if not args.part or not args.doc:
        raise ConfigError("--part and --doc are required in bank mode")
    return DocumentId(args.part, args.doc)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    config = AppConfig.load(args.config) if args.config else AppConfig()
    try:
        return run(args, config)
    except (ConfigError, NoParseError, TemplateError, ComposeError, KindError,
            FileNotFoundError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def run(args, config: AppConfig) -> int:
    command = args.command

    if command == "segment" and not args.part:
        text = sys.stdin.read().rstrip("\n")
        models = config.models(args.lang)
        labels = decode(text, models.segmenter)
        tokens = labels_to_tokens(text, labels)
        sys.stdout.write(token_table(tokens))
        return 0

    if command in ("segment", "semtag", "symbolize", "parse", "interpret",
                   "reannotate"):
        bank = Bank(bank_root(args))
        doc = document(args)
        models = config.models(args.lang)
        if command == "segment":
            tokens = segment_doc(bank, doc, args.lang, models)
            sys.stdout.write(token_table(tokens))
        elif command == "semtag":
            segment_if_missing(bank, doc, args.lang, models)
            tags = semtag_doc(bank, doc, args.lang, models)
            for i, t in enumerate(tags):
                print(f"{i}\t{t.lower()}")
        elif command == "symbolize":
            ensure_layers(bank, doc, args.lang, models, upto="semtag")
            symbols = symbolize_doc(bank, doc, args.lang, models)
            for i, s in enumerate(symbols):
                print(f"{i}\t{s if s is not None else '-'}")
        elif command == "parse":
            ensure_layers(bank, doc, args.lang, models, upto="sym")
            for deriv in parse_doc(bank, doc, args.lang, models):
                print(to_sexpr(deriv))
        elif command == "interpret":
            ensure_layers(bank, doc, args.lang, models, upto="sym")
            for box in interpret_doc(bank, doc, args.lang, models):
                sys.stdout.write(clausal(box))
        else:
            conflicts = reannotate_doc(bank, doc, args.lang, models)
            for c in conflicts:
                print(f"{c.id}\t{c.layer}\t{c.position}\t{c.gold_value}\t{c.new_value}")
        return 0

    if command == "project":
        bank = Bank(bank_root(args))
        doc = document(args)
        source_models = config.models(args.source_lang)
        target_models = config.models(args.target_lang)
        ensure_layers(bank, doc, args.source_lang, source_models, upto="sym")
        results = project_doc(bank, doc, args.source_lang, args.target_lang,
                              source_models, target_models)
        ok = True
        for result in results:
            line = result.status
            if result.reason:
                line += f"\t{result.reason}"
            print(line)
            ok = ok and result.status == VERIFIED
        if args.verify and not ok:
            return 1
        return 0

    if command == "status":
        bank = Bank(bank_root(args))
        doc = document(args)
        langs = [args.lang] if args.lang else bank.languages(doc)
        for lang in langs:
            for layer in LAYERS:
                print(f"{lang}\t{layer}\t{bank.layer_status(doc, lang, layer)}")
        return 0

    if command == "stats":
        bank = Bank(bank_root(args))
        sys.stdout.write(bank.stats_tsv())
        return 0

    if command == "train-segmenter":
        texts = Path(args.texts).read_text(encoding="utf-8").splitlines()
        labels = Path(args.labels).read_text(encoding="utf-8").splitlines()
        if len(texts) != len(labels):
            raise ConfigError("texts and labels line counts differ")
        corpus = [(t, list(l)) for t, l in zip(texts, labels)]
        model = train(corpus, TrainConfig(epochs=args.epochs, seed=args.seed))
        model.save(args.out)
        print(f"trained on {len(corpus)} documents -> {args.out}")
        return 0

    if command == "train-lexicon":
        rows = []
        for line in Path(args.annotations).read_text(encoding="utf-8").splitlines():
            if not line.strip() or line.startswith("#"):
                continue
            lang, surface, semtag = line.split("\t")[:3]
            rows.append((lang, surface, semtag))
        lexicon = train_lexicon(rows)
        lexicon.save(args.out)
        print(f"aggregated {len(rows)} annotations -> {args.out}")
        return 0

    if command == "serve":
        import uvicorn
        from .service import create_app
        app = create_app(Bank(bank_root(args)), config)
        uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
        return 0

    raise ConfigError(f"unknown command {command}")


def segment_if_missing(bank: Bank, doc, lang, models) -> None:
    if bank.read_automatic(doc, lang, "tok") is None:
        segment_doc(bank, doc, lang, models)


def ensure_layers(bank: Bank, doc, lang, models, upto: str) -> None:
    """Run earlier stages whose layers are missing."""
    segment_if_missing(bank, doc, lang, models)
    if bank.read_automatic(doc, lang, "semtag") is None:
        semtag_doc(bank, doc, lang, models)
    if upto == "semtag":
        return
    if bank.read_automatic(doc, lang, "sym") is None:
        symbolize_doc(bank, doc, lang, models)


if __name__ == "__main__":
    sys.exit(main())
