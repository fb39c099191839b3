"""Adapter fine-tuning over prepared-example files."""

from __future__ import annotations

import json
import logging
from pathlib import Path

import torch
from torch.utils.data import DataLoader, Dataset

from .config import AdapterConfig, TrainConfig
from .data import WordVocab, read_examples
from .errors import BadDataFile
from .model import (
    adapter_parameters,
    base_checksum,
    inject_adapters,
    load_model,
    save_adapter,
)

log = logging.getLogger("ftharness")

MAX_SOURCE_TOKENS = 1596


class _PairDataset(Dataset):
    def __init__(self, examples, vocab: WordVocab, max_target_tokens: int = 832):
        self.items = []
        for ex in examples:
            source = vocab.encode(ex.input_text)[:MAX_SOURCE_TOKENS]
            target = vocab.encode(ex.target_text)[: max_target_tokens - 1]
            self.items.append((source, target + [vocab.eos_id]))

    def __len__(self):
        return len(self.items)

    def __getitem__(self, i):
        return self.items[i]


def _collate(batch, pad_id: int):
    src_len = max(len(s) for s, _ in batch)
    tgt_len = max(len(t) for _, t in batch)
    input_ids = torch.full((len(batch), src_len), pad_id, dtype=torch.long)
    attention = torch.zeros((len(batch), src_len), dtype=torch.long)
    labels = torch.full((len(batch), tgt_len), -100, dtype=torch.long)
    for row, (src, tgt) in enumerate(batch):
        input_ids[row, : len(src)] = torch.tensor(src)
        attention[row, : len(src)] = 1
        labels[row, : len(tgt)] = torch.tensor(tgt)
    return input_ids, attention, labels


def _epoch_loss(model, loader, device) -> float:
    model.eval()
    total, batches = 0.0, 0
    with torch.no_grad():
        for input_ids, attention, labels in loader:
            out = model(input_ids=input_ids.to(device),
                        attention_mask=attention.to(device),
                        labels=labels.to(device))
            total += out.loss.item()
            batches += 1
    return total / batches


def train(
    train_file: str | Path,
    validation_file: str | Path | None,
    model_ref: str | Path,
    train_config: TrainConfig,
    adapter_config: AdapterConfig,
    adapter_dir: str | Path,
) -> list[dict]:
    """Fine-tune adapters; write the adapter artifact and return the loss log.

    Only adapter parameters receive gradients; the base stays frozen. The
    loss log holds one record per optimizer step plus one per-epoch summary
    (and a validation loss when a validation file is given). It is also
    written to ``loss_log.jsonl`` inside the adapter directory.
    """
    examples = read_examples(train_file)
    if any(not ex.target_text.strip() for ex in examples):
        raise BadDataFile(train_file, "empty target_text")
    model, vocab = load_model(model_ref)
    wrapped = inject_adapters(model, adapter_config)
    checksum_before = base_checksum(model)
    log.info("wrapped %d projections; %d trainable parameters",
             len(wrapped), sum(p.numel() for p in adapter_parameters(model).values()))

    device = torch.device("cuda" if torch.cuda.is_available() else "cpu")
    model.to(device)
    torch.manual_seed(train_config.seed)
    dataset = _PairDataset(examples, vocab)
    loader = DataLoader(
        dataset,
        batch_size=train_config.batch_size,
        shuffle=True,
        generator=torch.Generator().manual_seed(train_config.seed),
        collate_fn=lambda b: _collate(b, vocab.pad_id),
    )
    val_loader = None
    if validation_file is not None:
        val_dataset = _PairDataset(read_examples(validation_file), vocab)
        val_loader = DataLoader(
            val_dataset, batch_size=train_config.batch_size,
            collate_fn=lambda b: _collate(b, vocab.pad_id),
        )

    optimizer = torch.optim.AdamW(
        adapter_parameters(model).values(),
        lr=train_config.learning_rate,
        weight_decay=train_config.weight_decay,
    )
    # half precision only helps (and is only numerically safe here) on GPU
    use_amp = train_config.fp16 and device.type == "cuda"
    scaler = torch.amp.GradScaler(enabled=use_amp)

    loss_log: list[dict] = []
    step = 0
    for epoch in range(train_config.epochs):
        model.train()
        epoch_total, epoch_batches = 0.0, 0
        for input_ids, attention, labels in loader:
            optimizer.zero_grad()
            with torch.autocast(device.type, dtype=torch.float16, enabled=use_amp):
                out = model(input_ids=input_ids.to(device),
                            attention_mask=attention.to(device),
                            labels=labels.to(device))
            scaler.scale(out.loss).backward()
            scaler.step(optimizer)
            scaler.update()
            step += 1
            loss = out.loss.item()
            epoch_total += loss
            epoch_batches += 1
            loss_log.append({"step": step, "epoch": epoch + 1, "loss": loss})
        summary = {"epoch": epoch + 1, "mean_loss": epoch_total / epoch_batches}
        if val_loader is not None:
            summary["validation_loss"] = _epoch_loss(model, val_loader, device)
        loss_log.append(summary)
        log.info("epoch %d: %s", epoch + 1, summary)

    # the frozen base must come out of training bit-identical
    loss_log.append({
        "base_checksum_before": checksum_before,
        "base_checksum_after": base_checksum(model),
    })

    save_adapter(model, adapter_config, adapter_dir)
    with (Path(adapter_dir) / "loss_log.jsonl").open("w", encoding="utf-8") as f:
        for rec in loss_log:
            f.write(json.dumps(rec) + "\n")
    return loss_log
