"""Training, adapter, and generation hyperparameter sets.

Defaults are the fine-tuning recipe this harness reproduces; every field is
overridable for desk-scale runs.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class TrainConfig:
    batch_size: int = 2
    epochs: int = 4
    learning_rate: float = 1e-4
    fp16: bool = True
    weight_decay: float = 0.01
    seed: int = 0

    def __post_init__(self):
        if self.batch_size < 1:
            raise ValueError(f"batch_size must be positive: {self.batch_size}")
        if self.epochs < 0:
            raise ValueError(f"epochs must be non-negative: {self.epochs}")
        if self.learning_rate <= 0:
            raise ValueError(f"learning_rate must be positive: {self.learning_rate}")
        if self.weight_decay < 0:
            raise ValueError(f"weight_decay must be non-negative: {self.weight_decay}")


@dataclass(frozen=True)
class AdapterConfig:
    rank: int = 4
    alpha: float = 16.0
    dropout: float = 0.05
    # attention projections to wrap; "q"/"v" name the query and value
    # projections of every self- and cross-attention block
    targets: tuple[str, ...] = ("q", "v")

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError(f"rank must be >= 1: {self.rank}")
        if not 0 <= self.dropout < 1:
            raise ValueError(f"dropout out of [0, 1): {self.dropout}")
        if not self.targets:
            raise ValueError("targets must name at least one projection")
        object.__setattr__(self, "targets", tuple(self.targets))

    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "alpha": self.alpha,
            "dropout": self.dropout,
            "targets": list(self.targets),
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "AdapterConfig":
        return cls(
            rank=payload["rank"],
            alpha=payload["alpha"],
            dropout=payload["dropout"],
            targets=tuple(payload["targets"]),
        )


#: per-target maximum generated lengths, in tokens
MAX_LENGTHS = {"bhc": 832, "di": 792}


@dataclass(frozen=True)
class GenConfig:
    min_length: int = 10
    num_beams: int = 4
    do_sample: bool = True
    length_penalty: float = 1.1
    no_repeat_ngram_size: int = 4
    max_lengths: dict = field(default_factory=lambda: dict(MAX_LENGTHS))
    seed: int = 0
    batch_size: int = 4

    def __post_init__(self):
        if self.min_length < 1:
            raise ValueError(f"min_length must be positive: {self.min_length}")
        if self.num_beams < 1:
            raise ValueError(f"num_beams must be positive: {self.num_beams}")
        if self.no_repeat_ngram_size < 1:
            raise ValueError(
                f"no_repeat_ngram_size must be positive: {self.no_repeat_ngram_size}"
            )
        for target, cap in self.max_lengths.items():
            if cap < self.min_length:
                raise ValueError(f"max length for {target!r} below min_length: {cap}")

    def max_length_for(self, target: str) -> int:
        try:
            return self.max_lengths[target]
        except KeyError:
            raise ValueError(f"no max length configured for target {target!r}")
