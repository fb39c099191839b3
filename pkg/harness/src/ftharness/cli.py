"""Command-line harness: init-model, train, generate."""

from __future__ import annotations

import argparse
import logging
import sys

import torch

from .config import MAX_LENGTHS, AdapterConfig, GenConfig, TrainConfig
from .data import WordVocab, read_examples
from .errors import HarnessError
from .generate import generate
from .model import new_tiny_model, save_model
from .train import train

log = logging.getLogger("ftharness")


def cmd_init_model(args) -> int:
    examples = read_examples(args.train_file)
    vocab = WordVocab.build(
        [ex.input_text for ex in examples] + [ex.target_text for ex in examples]
    )
    torch.manual_seed(args.seed)
    model = new_tiny_model(vocab)
    save_model(model, vocab, args.output_dir)
    log.info("saved stand-in model (vocab %d) to %s", len(vocab), args.output_dir)
    return 0


def cmd_train(args) -> int:
    train_config = TrainConfig(
        batch_size=args.batch_size,
        epochs=args.epochs,
        learning_rate=args.learning_rate,
        fp16=not args.no_fp16,
        weight_decay=args.weight_decay,
        seed=args.seed,
    )
    adapter_config = AdapterConfig(
        rank=args.rank, alpha=args.alpha, dropout=args.dropout,
        targets=tuple(args.targets.split(",")),
    )
    loss_log = train(args.train_file, args.validation_file, args.model,
                     train_config, adapter_config, args.adapter_dir)
    steps = sum(1 for rec in loss_log if "step" in rec)
    log.info("finished %d steps; adapter written to %s", steps, args.adapter_dir)
    return 0


def cmd_generate(args) -> int:
    config = GenConfig(
        min_length=args.min_length,
        num_beams=args.num_beams,
        do_sample=not args.no_sample,
        length_penalty=args.length_penalty,
        no_repeat_ngram_size=args.no_repeat_ngram_size,
        max_lengths={"bhc": args.max_length_bhc, "di": args.max_length_di},
        seed=args.seed,
        batch_size=args.batch_size,
    )
    records = generate(args.model, args.adapter, args.inputs, args.output, config)
    log.info("wrote %d generations to %s", len(records), args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ftharness",
        description="Adapter fine-tuning and constrained generation",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("init-model",
                       help="build a stand-in model over the training vocabulary")
    p.add_argument("--train-file", required=True)
    p.add_argument("--output-dir", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_init_model)

    p = sub.add_parser("train", help="fine-tune adapters on prepared examples")
    p.add_argument("--train-file", required=True)
    p.add_argument("--validation-file", default=None)
    p.add_argument("--model", required=True, help="model directory")
    p.add_argument("--adapter-dir", required=True)
    p.add_argument("--batch-size", type=int, default=2)
    p.add_argument("--epochs", type=int, default=4)
    p.add_argument("--learning-rate", type=float, default=1e-4)
    p.add_argument("--no-fp16", action="store_true")
    p.add_argument("--weight-decay", type=float, default=0.01)
    p.add_argument("--rank", type=int, default=4)
    p.add_argument("--alpha", type=float, default=16.0)
    p.add_argument("--dropout", type=float, default=0.05)
    p.add_argument("--targets", default="q,v")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("generate", help="generate texts for prepared inputs")
    p.add_argument("--model", required=True, help="model directory")
    p.add_argument("--adapter", default=None, help="adapter directory")
    p.add_argument("--inputs", required=True,
                   help="prepared-example JSONL (input_text is consumed)")
    p.add_argument("--output", required=True, help="generations JSONL")
    p.add_argument("--min-length", type=int, default=10)
    p.add_argument("--num-beams", type=int, default=4)
    p.add_argument("--no-sample", action="store_true")
    p.add_argument("--length-penalty", type=float, default=1.1)
    p.add_argument("--no-repeat-ngram-size", type=int, default=4)
    p.add_argument("--max-length-bhc", type=int, default=MAX_LENGTHS["bhc"])
    p.add_argument("--max-length-di", type=int, default=MAX_LENGTHS["di"])
    p.add_argument("--batch-size", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_generate)
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
        return args.func(args)
    except HarnessError as e:
        log.error("%s", e)
        return 2


if __name__ == "__main__":
    sys.exit(main())
