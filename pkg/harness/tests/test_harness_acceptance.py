"""Acceptance gate for the fine-tuning harness, numbered after the
preprocessing toolkit's seven criteria. Each test prints one
``[acceptance] PASS`` line on success."""

from ftharness.config import GenConfig
from ftharness.generate import generate


def _announce(capsys, number: int, message: str) -> None:
    with capsys.disabled():
        print(f"[acceptance] PASS criterion {number}: {message}")


def test_criterion_8_toy_finetune(trained, capsys):
    _, loss_log = trained
    epochs = [rec["mean_loss"] for rec in loss_log if "mean_loss" in rec]
    assert len(epochs) == 4  # default epoch count
    assert epochs[-1] < epochs[0], epochs
    checksums = loss_log[-1]
    assert checksums["base_checksum_before"] == checksums["base_checksum_after"]
    _announce(capsys, 8, "50-pair fine-tune with default hyperparameters: "
                         f"epoch loss {epochs[0]:.4f} -> {epochs[-1]:.4f}, "
                         "base checksum unchanged")


def test_criterion_9_generation_constraints(model_dir, trained,
                                            mixed_inputs_file, tmp_path, capsys):
    config = GenConfig()  # defaults: min 10, max 832/792, no-repeat 4
    records = generate(model_dir, trained[0], mixed_inputs_file,
                       tmp_path / "gen.jsonl", config)
    assert len(records) == 6
    for rec in records:
        tokens = rec["text"].split()
        cap = config.max_length_for(rec["target"])
        assert config.min_length <= len(tokens) <= cap, rec["hadm_id"]
        n = config.no_repeat_ngram_size
        ngrams = [tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1)]
        assert len(ngrams) == len(set(ngrams)), rec["hadm_id"]
    _announce(capsys, 9, "all generations satisfy min 10 / max 832|792 tokens "
                         "and contain no repeated 4-gram")
