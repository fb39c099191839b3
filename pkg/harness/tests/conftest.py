import json
import os
import random

import pytest
import torch

os.environ.setdefault("HF_HUB_DISABLE_PROGRESS_BARS", "1")
os.environ.setdefault("TRANSFORMERS_VERBOSITY", "error")

from ftharness.cli import main as harness_main
from ftharness.config import AdapterConfig, TrainConfig
from ftharness.data import WordVocab, read_examples
from ftharness.model import new_tiny_model
from ftharness.train import train


def make_pairs(count, target="bhc", seed=0):
    """Learnable synthetic (input, target) pairs in the prepared format."""
    rng = random.Random(seed)
    words = [f"w{i}" for i in range(30)]
    pairs = []
    for i in range(count):
        phrase = " ".join(rng.choice(words) for _ in range(rng.randint(12, 20)))
        pairs.append({
            "hadm_id": str(i),
            "target": target,
            "input_text": "The patient's name is provided as follows: " + phrase,
            "target_text": "patient stable " + phrase,
        })
    return pairs


def write_pairs(pairs, path):
    path.write_text(
        "".join(json.dumps(p, ensure_ascii=False) + "\n" for p in pairs),
        encoding="utf-8",
    )


@pytest.fixture(scope="session")
def workdir(tmp_path_factory):
    return tmp_path_factory.mktemp("harness")


@pytest.fixture(scope="session")
def train_file(workdir):
    path = workdir / "bhc_train.jsonl"
    write_pairs(make_pairs(50), path)
    return path


@pytest.fixture(scope="session")
def mixed_inputs_file(workdir):
    path = workdir / "mixed.jsonl"
    write_pairs(make_pairs(3, "bhc", seed=1) + make_pairs(3, "di", seed=2), path)
    return path


@pytest.fixture(scope="session")
def model_dir(workdir, train_file):
    out = workdir / "model"
    assert harness_main([
        "init-model", "--train-file", str(train_file), "--output-dir", str(out),
    ]) == 0
    return out


@pytest.fixture(scope="session")
def trained(workdir, train_file, model_dir):
    """One default-hyperparameter training run shared across tests."""
    adapter_dir = workdir / "adapter"
    loss_log = train(train_file, None, model_dir, TrainConfig(), AdapterConfig(),
                     adapter_dir)
    return adapter_dir, loss_log


@pytest.fixture()
def small_model(train_file):
    examples = read_examples(train_file)
    vocab = WordVocab.build(
        [ex.input_text for ex in examples] + [ex.target_text for ex in examples]
    )
    torch.manual_seed(0)
    return new_tiny_model(vocab), vocab
