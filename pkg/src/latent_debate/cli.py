"""Command line entry point: records -> graphs -> verdicts -> features -> detector.

Subcommands: evaluate, render, features, train, explain.  Every command is
deterministic given its inputs, flags and seed, never mutates input files,
and exits nonzero with a message on stderr when something is wrong.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .detector import (
    DetectorConfig,
    DetectorModel,
    auroc,
    importance_report,
    sample_background,
    split_dataset,
    train,
)
from .errors import LatentDebateError
from .features import export_table, extract_features, load_table, region_partition
from .grid import Topology, evaluate_record
from .records import format_label, load_corpus, parse_record
from .render import render_ansi, render_svg
from .surrogates import METHOD_ORDER, all_verdicts, consistency, format_consistency_csv

DEFAULT_SEED = 42


def _write_output(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _topology(args: argparse.Namespace) -> Topology:
    return Topology(args.topology)


def cmd_evaluate(args: argparse.Namespace) -> int:
    records = load_corpus(args.records)
    topology = _topology(args)
    use_weights = not args.no_token_weight
    labels = {method: [] for method in METHOD_ORDER}
    lines = ["record,method,label,score"]
    for index, record in enumerate(records, start=1):
        for verdict in all_verdicts(record, args.seed, topology, use_weights):
            labels[verdict.method].append(verdict.label)
            lines.append(
                f"{index},{verdict.method.value},"
                f"{format_label(verdict.label)},{verdict.score:.6f}"
            )
    predictions = [r.model_prediction for r in records]
    entries = [
        (method, len(records), consistency(labels[method], predictions))
        for method in METHOD_ORDER
    ]
    text = "\n".join(lines) + "\n\n" + format_consistency_csv(entries)
    _write_output(text, args.out)
    return 0


def cmd_render(args: argparse.Namespace) -> int:
    record = parse_record(Path(args.record).read_bytes())
    qbaf, strengths = evaluate_record(record, _topology(args), not args.no_token_weight)
    if args.format == "svg":
        text = render_svg(record, qbaf, strengths)
    else:
        text = render_ansi(record, qbaf, strengths)
    _write_output(text, args.out)
    return 0


def cmd_features(args: argparse.Namespace) -> int:
    records = load_corpus(args.records)
    topology = _topology(args)
    use_weights = not args.no_token_weight
    vectors = []
    for record in records:
        qbaf, strengths = evaluate_record(record, topology, use_weights)
        partition = region_partition(record.num_layers)
        vectors.append(extract_features(qbaf, strengths, partition, record))
    _write_output(export_table(vectors), args.out)
    return 0


def _load_config(args: argparse.Namespace) -> DetectorConfig:
    overrides: dict = {}
    if args.config is not None:
        overrides.update(json.loads(Path(args.config).read_text(encoding="utf-8")))
    if args.seed is not None:
        overrides["seed"] = args.seed
    return DetectorConfig.from_dict(overrides)


def cmd_train(args: argparse.Namespace) -> int:
    vectors = load_table(Path(args.features).read_text(encoding="utf-8"))
    config = _load_config(args)
    train_set, test_set = split_dataset(vectors, config)
    model = train(train_set, config)
    scores = [model.predict_proba(v.features) for v in test_set]
    value = auroc(scores, [v.label for v in test_set])
    Path(args.out).write_text(model.to_json(), encoding="utf-8")
    sys.stdout.write(f"auroc,{value:.4f}\n")
    return 0


def cmd_explain(args: argparse.Namespace) -> int:
    model = DetectorModel.from_json(Path(args.model).read_text(encoding="utf-8"))
    vectors = load_table(Path(args.features).read_text(encoding="utf-8"))
    seed = args.seed if args.seed is not None else model.config.seed
    background = sample_background(vectors, seed)
    _write_output(importance_report(model, vectors, background), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latent-debate",
        description="Debate-grid surrogate verdicts and hallucination detection.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_grid_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--topology",
            choices=[t.value for t in Topology],
            default=Topology.SIMPLE.value,
            help="grid wiring (default: simple)",
        )
        p.add_argument(
            "--no-token-weight",
            action="store_true",
            help="ignore token weights (all weights 1.0)",
        )

    p_eval = sub.add_parser("evaluate", help="surrogate verdicts plus consistency summary")
    p_eval.add_argument("records", help="JSON-lines corpus of records")
    add_grid_flags(p_eval)
    p_eval.add_argument("--seed", type=int, default=DEFAULT_SEED, help="random-baseline seed")
    p_eval.add_argument("--out", default=None, help="write output here instead of stdout")
    p_eval.set_defaults(func=cmd_evaluate)

    p_render = sub.add_parser("render", help="draw one record's evaluated grid")
    p_render.add_argument("record", help="single-record JSON document")
    add_grid_flags(p_render)
    p_render.add_argument("--format", choices=["ansi", "svg"], default="ansi")
    p_render.add_argument("--out", default=None)
    p_render.set_defaults(func=cmd_render)

    p_features = sub.add_parser("features", help="region feature CSV for a corpus")
    p_features.add_argument("records", help="JSON-lines corpus of records")
    add_grid_flags(p_features)
    p_features.add_argument("--out", default=None)
    p_features.set_defaults(func=cmd_features)

    p_train = sub.add_parser("train", help="fit the detector on a feature CSV")
    p_train.add_argument("features", help="feature CSV from the features command")
    p_train.add_argument("--config", default=None, help="detector config JSON overrides")
    p_train.add_argument("--seed", type=int, default=None, help="override the config seed")
    p_train.add_argument("--out", required=True, help="model JSON output path")
    p_train.set_defaults(func=cmd_train)

    p_explain = sub.add_parser("explain", help="attribution importance report")
    p_explain.add_argument("model", help="model JSON from the train command")
    p_explain.add_argument("features", help="feature CSV to explain")
    p_explain.add_argument("--seed", type=int, default=None, help="background sampling seed")
    p_explain.add_argument("--out", default=None)
    p_explain.set_defaults(func=cmd_explain)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (LatentDebateError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
