"""Base-model handling and low-rank adapter injection.

The desk-scale base is a small randomly initialized T5 built over a word
vocabulary derived from the training file; any directory produced by
``save_pretrained`` (with a ``vocab.json`` beside it) also resolves, so a
full-scale pretrained encoder-decoder can be dropped in.

Adapters are plain additive low-rank factors on the attention query/value
projections: ``W x + (alpha / rank) * B A x`` with ``A`` Gaussian and ``B``
zero at initialization, so an untrained adapter is an exact no-op.
"""

from __future__ import annotations

import hashlib
import json
import math
from pathlib import Path

import torch
from torch import nn
from transformers import T5Config, T5ForConditionalGeneration

from .config import AdapterConfig
from .data import WordVocab
from .errors import ModelLoadError

VOCAB_FILE = "vocab.json"
ADAPTER_FILE = "adapter.pt"
ADAPTER_CONFIG_FILE = "adapter_config.json"

TINY_T5 = dict(d_model=64, d_kv=16, d_ff=128, num_layers=2, num_heads=4)


class LoRALinear(nn.Module):
    """A frozen linear layer plus a trainable low-rank residual."""

    def __init__(self, base: nn.Linear, rank: int, alpha: float, dropout: float):
        super().__init__()
        self.base = base
        self.rank = rank
        self.scaling = alpha / rank
        self.dropout = nn.Dropout(dropout)
        self.lora_A = nn.Parameter(torch.empty(rank, base.in_features))
        self.lora_B = nn.Parameter(torch.zeros(base.out_features, rank))
        nn.init.kaiming_uniform_(self.lora_A, a=math.sqrt(5))

    def forward(self, x):
        update = self.dropout(x) @ self.lora_A.T @ self.lora_B.T
        return self.base(x) + self.scaling * update


def new_tiny_model(vocab: WordVocab) -> T5ForConditionalGeneration:
    config = T5Config(
        vocab_size=len(vocab),
        pad_token_id=vocab.pad_id,
        eos_token_id=vocab.eos_id,
        decoder_start_token_id=vocab.pad_id,
        **TINY_T5,
    )
    return T5ForConditionalGeneration(config)


def save_model(model: T5ForConditionalGeneration, vocab: WordVocab,
               model_dir: str | Path) -> None:
    model_dir = Path(model_dir)
    model_dir.mkdir(parents=True, exist_ok=True)
    model.save_pretrained(model_dir)
    vocab.save(model_dir / VOCAB_FILE)


def load_model(model_ref: str | Path) -> tuple[T5ForConditionalGeneration, WordVocab]:
    """Resolve a model reference: a directory holding a saved model and its
    vocabulary artifact."""
    model_dir = Path(model_ref)
    if not (model_dir / VOCAB_FILE).exists():
        raise ModelLoadError(f"no {VOCAB_FILE} under model reference {model_dir}")
    try:
        vocab = WordVocab.load(model_dir / VOCAB_FILE)
        model = T5ForConditionalGeneration.from_pretrained(model_dir)
    except (OSError, ValueError, EnvironmentError) as e:
        raise ModelLoadError(f"cannot load model from {model_dir}: {e}") from e
    return model, vocab


def inject_adapters(model: nn.Module, config: AdapterConfig) -> list[str]:
    """Freeze the base model and wrap the target projections with LoRA.

    Returns the dotted names of the wrapped modules. Only ``lora_A`` /
    ``lora_B`` parameters remain trainable afterwards.
    """
    for p in model.parameters():
        p.requires_grad_(False)
    wrapped = []
    for name, module in list(model.named_modules()):
        leaf = name.rsplit(".", 1)[-1]
        if leaf in config.targets and isinstance(module, nn.Linear):
            parent_name, _, attr = name.rpartition(".")
            parent = model.get_submodule(parent_name) if parent_name else model
            setattr(parent, attr,
                    LoRALinear(module, config.rank, config.alpha, config.dropout))
            wrapped.append(name)
    if not wrapped:
        raise ValueError(f"no projections named {config.targets} found")
    return wrapped


def adapter_parameters(model: nn.Module) -> dict[str, nn.Parameter]:
    return {
        name: p for name, p in model.named_parameters()
        if name.endswith(("lora_A", "lora_B"))
    }


def trainable_parameter_count(model: nn.Module) -> int:
    return sum(p.numel() for p in model.parameters() if p.requires_grad)


def base_checksum(model: nn.Module) -> str:
    """SHA-256 over all non-adapter parameters, in name order."""
    digest = hashlib.sha256()
    for name, p in sorted(model.named_parameters()):
        if name.endswith(("lora_A", "lora_B")):
            continue
        digest.update(name.encode())
        digest.update(p.detach().cpu().contiguous().numpy().tobytes())
    return digest.hexdigest()


def save_adapter(model: nn.Module, config: AdapterConfig,
                 adapter_dir: str | Path) -> None:
    adapter_dir = Path(adapter_dir)
    adapter_dir.mkdir(parents=True, exist_ok=True)
    state = {name: p.detach().cpu() for name, p in adapter_parameters(model).items()}
    torch.save(state, adapter_dir / ADAPTER_FILE)
    (adapter_dir / ADAPTER_CONFIG_FILE).write_text(
        json.dumps(config.to_dict(), indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )


def load_adapter(model: nn.Module, adapter_dir: str | Path) -> AdapterConfig:
    """Inject adapters per the saved config and restore their weights."""
    adapter_dir = Path(adapter_dir)
    try:
        config = AdapterConfig.from_dict(
            json.loads((adapter_dir / ADAPTER_CONFIG_FILE).read_text())
        )
        state = torch.load(adapter_dir / ADAPTER_FILE, weights_only=True)
    except (OSError, ValueError, KeyError) as e:
        raise ModelLoadError(f"cannot load adapter from {adapter_dir}: {e}") from e
    inject_adapters(model, config)
    params = adapter_parameters(model)
    if set(state) != set(params):
        raise ModelLoadError(
            f"adapter/model mismatch: {sorted(set(state) ^ set(params))[:4]}"
        )
    with torch.no_grad():
        for name, p in params.items():
            p.copy_(state[name])
    return config
