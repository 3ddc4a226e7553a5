"""Command line: QA conversion and record extraction."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .claims import claim_to_json, convert_qa_corpus, load_claims, load_qa
from .corpus import extract_corpus
from .errors import ExtractorError, NoAlternativeAnswer
from .probe import DEFAULT_TEMPLATE, ExtractionConfig, Probe
from .similarity import DEFAULT_CROSS_ENCODER, CrossEncoderScorer

logger = logging.getLogger(__name__)


def cmd_convert(args: argparse.Namespace) -> int:
    items = load_qa(args.qa)
    skipped = 0
    lines = []
    for claims in _tolerant_conversion(items, args.seed):
        if claims is None:
            skipped += 1
            continue
        lines.extend(claim_to_json(c) + "\n" for c in claims)
    Path(args.out).write_text("".join(lines), encoding="utf-8")
    if skipped:
        print(f"skipped {skipped} items without an alternative answer", file=sys.stderr)
    return 0


def _tolerant_conversion(items, seed):
    pool = tuple(item.answer for item in items)
    from .claims import convert_qa_to_claims

    for index, item in enumerate(items):
        try:
            yield convert_qa_to_claims(
                item.question, item.answer, item.distractors, seed + index, pool
            )
        except NoAlternativeAnswer as exc:
            logger.warning("%s", exc)
            yield None


def cmd_extract(args: argparse.Namespace) -> int:
    config = ExtractionConfig(
        model=args.model,
        template=args.template,
        k=args.k,
        weights=args.weights,
        cross_encoder_model=args.cross_encoder_model,
        device=args.device,
    )
    claims = load_claims(args.claims)
    probe = Probe(config)
    scorer = None
    if config.weights == "cross-encoder":
        scorer = CrossEncoderScorer(config.cross_encoder_model, device=config.device)
    summary = extract_corpus(
        probe, claims, args.out, scorer=scorer, resume=not args.no_resume
    )
    print(
        f"extracted {summary.extracted} records "
        f"({summary.skipped_existing} already present, {summary.failed} failed)"
    )
    return 0 if summary.failed == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="debate-extractor",
        description="Produce per-layer truth-probability records from a causal LM.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_convert = sub.add_parser("convert", help="turn QA items into binary claims")
    p_convert.add_argument("qa", help="QA JSON-lines: question, answer, distractors")
    p_convert.add_argument("--seed", type=int, default=42)
    p_convert.add_argument("--out", required=True, help="claims JSON-lines output")
    p_convert.set_defaults(func=cmd_convert)

    p_extract = sub.add_parser("extract", help="extract records for a claims file")
    p_extract.add_argument("claims", help="claims JSON-lines: claim, gold_label, meta")
    p_extract.add_argument("--model", required=True, help="model id or local path")
    p_extract.add_argument("--template", default=DEFAULT_TEMPLATE)
    p_extract.add_argument("--k", type=int, default=None, help="thinking-step count")
    p_extract.add_argument(
        "--weights", choices=["cross-encoder", "uniform"], default="cross-encoder"
    )
    p_extract.add_argument("--cross-encoder-model", default=DEFAULT_CROSS_ENCODER)
    p_extract.add_argument("--device", default="cpu")
    p_extract.add_argument("--out", required=True, help="records JSON-lines output")
    p_extract.add_argument(
        "--no-resume", action="store_true", help="overwrite instead of appending"
    )
    p_extract.set_defaults(func=cmd_extract)
    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ExtractorError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
