"""Command-line pipeline: prepare, split, clean-targets, stats, score."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import __version__
from .assembly import DEFAULT_INPUT_BUDGET, TargetKind, build_input
from .cleaning import clean_target
from .corpus import (
    PreparedExample,
    SplitSpec,
    corpus_stats,
    load_notes,
    read_prepared,
    split_dataset,
    write_prepared,
)
from .errors import AlignmentError, DcsumError
from .metrics import format_table, score_corpus
from .sections import (
    INPUT_KINDS,
    SectionKind,
    extract_sections,
    extract_target,
    found_sections,
    strip_targets,
)
from .tokenization import Tokenizer

log = logging.getLogger("dcsum")

_TARGET_SECTION = {
    "bhc": SectionKind.BRIEF_HOSPITAL_COURSE,
    "di": SectionKind.DISCHARGE_INSTRUCTIONS,
}


def _tokenizer_from(args) -> Tokenizer:
    return Tokenizer(mode=args.tokenizer, vocab_path=args.vocab)


def _prepare_note(item: tuple[str, str, str, str, str | None, int]):
    """One note -> (per-target example fields, section hit map).

    Top-level so a process pool can pickle it; the tokenizer is rebuilt per
    call, which is cheap for both modes.
    """
    hadm_id, text, targets, mode, vocab, budget = item
    tokenizer = Tokenizer(mode=mode, vocab_path=vocab)
    stripped = strip_targets(text)
    sections = extract_sections(stripped)
    hits = found_sections(text)
    examples = []
    for name in targets.split(","):
        raw_target = extract_target(text, _TARGET_SECTION[name])
        target_text = clean_target(raw_target) if raw_target is not None else ""
        input_text = build_input(sections, TargetKind(name), tokenizer, budget)
        examples.append((name, input_text, target_text))
    return hadm_id, examples, hits


def cmd_prepare(args) -> int:
    notes = load_notes(args.input, args.format)
    spec = SplitSpec(train_fraction=Fraction(args.train_fraction), seed=args.seed)
    train, validation = split_dataset(notes, spec)
    out_dir = Path(args.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    targets = ["bhc", "di"] if args.targets == "both" else [args.targets]

    hit_totals = {k.value: 0 for k in INPUT_KINDS}
    counts = {}
    for split_name, split_notes in (("train", train), ("validation", validation)):
        items = [
            (n.hadm_id, n.text, ",".join(targets), args.tokenizer, args.vocab,
             args.budget)
            for n in split_notes
        ]
        if args.workers > 1:
            with ProcessPoolExecutor(max_workers=args.workers) as pool:
                results = list(pool.map(_prepare_note, items, chunksize=16))
        else:
            results = [_prepare_note(item) for item in items]

        per_target: dict[str, list[PreparedExample]] = {t: [] for t in targets}
        for hadm_id, examples, hits in results:
            for name, input_text, target_text in examples:
                per_target[name].append(
                    PreparedExample(hadm_id, name, input_text, target_text)
                )
            for kind, hit in hits.items():
                hit_totals[kind.value] += int(hit)
        for name, examples in per_target.items():
            path = out_dir / f"{name}_{split_name}.jsonl"
            write_prepared(examples, path)
            counts[f"{name}_{split_name}"] = len(examples)
            log.info("wrote %d examples to %s", len(examples), path)

    manifest = {
        "version": __version__,
        "command": "prepare",
        "input": str(args.input),
        "targets": targets,
        "tokenizer": args.tokenizer,
        "vocab": args.vocab,
        "budget": args.budget,
        "train_fraction": str(spec.train_fraction),
        "seed": args.seed,
        "counts": counts,
        "section_hit_rate": {
            name: total / len(notes) for name, total in hit_totals.items()
        },
    }
    (out_dir / "manifest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    return 0


def cmd_split(args) -> int:
    notes = load_notes(args.input, args.format)
    spec = SplitSpec(train_fraction=Fraction(args.train_fraction), seed=args.seed)
    train, validation = split_dataset(notes, spec)
    out_dir = Path(args.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, split_notes in (("train", train), ("validation", validation)):
        path = out_dir / f"notes_{name}.jsonl"
        with path.open("w", encoding="utf-8") as f:
            for n in split_notes:
                f.write(
                    json.dumps(
                        {"hadm_id": n.hadm_id, "note_id": n.note_id, "text": n.text},
                        ensure_ascii=False,
                    )
                    + "\n"
                )
        log.info("wrote %d notes to %s", len(split_notes), path)
    return 0


def cmd_clean_targets(args) -> int:
    notes = load_notes(args.input, args.format)
    out = Path(args.output)
    with out.open("w", encoding="utf-8") as f:
        for n in notes:
            for name, kind in _TARGET_SECTION.items():
                raw = extract_target(n.text, kind)
                if raw is None:
                    continue
                f.write(
                    json.dumps(
                        {"hadm_id": n.hadm_id, "target": name,
                         "text": clean_target(raw)},
                        ensure_ascii=False,
                    )
                    + "\n"
                )
    return 0


def cmd_stats(args) -> int:
    tokenizer = _tokenizer_from(args)
    if args.field in ("input_text", "target_text"):
        examples = read_prepared(args.input)
        texts = [getattr(ex, args.field) for ex in examples]
    else:
        texts = [n.text for n in load_notes(args.input, args.format)]
    stats = corpus_stats(texts, tokenizer)
    json.dump(
        {
            "tokenizer": args.tokenizer,
            "count": len(texts),
            "min": stats.min,
            "max": stats.max,
            "mean": stats.mean,
            "mean_rounded": round(stats.mean),
            "histogram": [list(b) for b in stats.histogram],
        },
        sys.stdout,
        indent=2,
    )
    print()
    return 0


def _load_generated(path: str) -> dict[tuple[str, str], str]:
    out = {}
    with open(path, encoding="utf-8") as f:
        for line in f:
            if not line.strip():
                continue
            rec = json.loads(line)
            out[(rec["hadm_id"], rec["target"])] = rec["text"]
    return out


def _load_external(path: str) -> dict[str, dict[str, float]]:
    out: dict[str, dict[str, float]] = {}
    with open(path, encoding="utf-8") as f:
        for line in f:
            if not line.strip():
                continue
            rec = json.loads(line)
            out.setdefault(rec["target"], {})[rec["metric"]] = float(rec["value"])
    return out


def cmd_score(args) -> int:
    generated = _load_generated(args.generated)
    references = {
        (ex.hadm_id, ex.target): ex.target_text for ex in read_prepared(args.references)
    }
    unmatched = set(generated) ^ set(references)
    if unmatched:
        raise AlignmentError(unmatched)
    pairs_by_target: dict[str, list[tuple[str, str]]] = {"bhc": [], "di": []}
    for key in sorted(generated):
        pairs_by_target[key[1]].append((generated[key], references[key]))
    external = _load_external(args.external_scores) if args.external_scores else None
    report = score_corpus(pairs_by_target, external)
    payload = json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n"
    if args.output:
        Path(args.output).write_text(payload, encoding="utf-8")
    else:
        sys.stdout.write(payload)
    print(format_table(report))
    return 0


def _add_tokenizer_flags(p):
    p.add_argument("--tokenizer", choices=["whitespace", "subword"],
                   default="whitespace")
    p.add_argument("--vocab", default=None,
                   help="vocabulary file for subword mode (one token per line)")


def _add_input_flags(p):
    p.add_argument("--input", required=True, help="notes file (CSV or JSONL)")
    p.add_argument("--format", choices=["csv", "jsonl"], default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dcsum",
        description="Discharge-note preprocessing and n-gram scoring pipeline",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prepare", help="build (input, target) example files")
    _add_input_flags(p)
    p.add_argument("--output-dir", required=True)
    p.add_argument("--targets", choices=["bhc", "di", "both"], default="both")
    _add_tokenizer_flags(p)
    p.add_argument("--budget", type=int, default=DEFAULT_INPUT_BUDGET)
    p.add_argument("--train-fraction", default="4/5")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_prepare)

    p = sub.add_parser("split", help="write deterministic train/validation files")
    _add_input_flags(p)
    p.add_argument("--output-dir", required=True)
    p.add_argument("--train-fraction", default="4/5")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("clean-targets", help="extract and clean target summaries")
    _add_input_flags(p)
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_clean_targets)

    p = sub.add_parser("stats", help="token-length statistics for a corpus")
    _add_input_flags(p)
    p.add_argument("--field", choices=["text", "input_text", "target_text"],
                   default="text")
    _add_tokenizer_flags(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("score", help="score generations against references")
    p.add_argument("--generated", required=True,
                   help="JSONL with hadm_id, target, text")
    p.add_argument("--references", required=True,
                   help="prepared-example JSONL; target_text is the reference")
    p.add_argument("--external-scores", default=None,
                   help="JSONL with target, metric, value for model-based metrics")
    p.add_argument("--output", default=None, help="score report JSON path")
    p.set_defaults(func=cmd_score)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.INFO,
                        format="%(levelname)s %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 1 if e.code not in (0, None) else 0
    try:
        if args.budget is not None and args.budget <= 0:
            parser.error("--budget must be positive")
    except AttributeError:
        pass
    except SystemExit:
        return 1
    try:
        return args.func(args)
    except DcsumError as e:
        log.error("%s", e)
        return 2


if __name__ == "__main__":
    sys.exit(main())
