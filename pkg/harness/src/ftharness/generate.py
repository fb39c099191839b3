"""Constrained beam-search generation over prepared input files."""

from __future__ import annotations

import logging
from pathlib import Path

import torch

from .config import GenConfig
from .data import read_examples, write_generations
from .model import load_adapter, load_model

log = logging.getLogger("ftharness")


def _decode_batch(model, vocab, sources: list[list[int]], config: GenConfig,
                  max_length: int) -> list[str]:
    pad = vocab.pad_id
    width = max(len(s) for s in sources)
    input_ids = torch.full((len(sources), width), pad, dtype=torch.long)
    attention = torch.zeros((len(sources), width), dtype=torch.long)
    for row, src in enumerate(sources):
        input_ids[row, : len(src)] = torch.tensor(src)
        attention[row, : len(src)] = 1
    output = model.generate(
        input_ids=input_ids,
        attention_mask=attention,
        # +1 leaves room for the end-of-sequence token, so at least
        # min_length content tokens survive decoding
        min_new_tokens=config.min_length + 1,
        max_new_tokens=max_length,
        num_beams=config.num_beams,
        do_sample=config.do_sample,
        length_penalty=config.length_penalty,
        no_repeat_ngram_size=config.no_repeat_ngram_size,
        # pad/unk are ordinary vocabulary rows in the stand-in model; keep
        # them out of generations so decoded token counts are exact
        suppress_tokens=[vocab.pad_id, vocab.unk_id],
    )
    return [vocab.decode(row.tolist()) for row in output]


def generate(
    model_ref: str | Path,
    adapter_dir: str | Path | None,
    inputs_file: str | Path,
    output_file: str | Path,
    config: GenConfig,
) -> list[dict]:
    """Generate one text per input example and write a generations file.

    Every output satisfies the configured constraints: at least min_length
    tokens, at most the per-target max length, and no repeated n-gram of
    the configured size (enforced by the decoder, asserted here).
    """
    examples = read_examples(inputs_file)
    model, vocab = load_model(model_ref)
    if adapter_dir is not None:
        load_adapter(model, adapter_dir)
    model.eval()
    torch.manual_seed(config.seed)

    records = []
    by_target: dict[str, list] = {}
    for ex in examples:
        by_target.setdefault(ex.target, []).append(ex)
    for target in sorted(by_target):
        max_length = config.max_length_for(target)
        batch = by_target[target]
        for start in range(0, len(batch), config.batch_size):
            chunk = batch[start : start + config.batch_size]
            sources = [vocab.encode(ex.input_text) or [vocab.unk_id]
                       for ex in chunk]
            with torch.no_grad():
                texts = _decode_batch(model, vocab, sources, config, max_length)
            for ex, text in zip(chunk, texts):
                _check_constraints(text, target, config, max_length)
                records.append(
                    {"hadm_id": ex.hadm_id, "target": ex.target, "text": text}
                )
        log.info("generated %d texts for target %s", len(batch), target)

    records.sort(key=lambda r: (r["target"], r["hadm_id"]))
    write_generations(records, output_file)
    return records


def _check_constraints(text: str, target: str, config: GenConfig,
                       max_length: int) -> None:
    tokens = text.split()
    if not config.min_length <= len(tokens) <= max_length:
        raise AssertionError(
            f"{target}: length {len(tokens)} outside [{config.min_length}, "
            f"{max_length}]"
        )
    n = config.no_repeat_ngram_size
    ngrams = [tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1)]
    if len(set(ngrams)) != len(ngrams):
        raise AssertionError(f"{target}: repeated {n}-gram in output")
