import json
from pathlib import Path

import pytest

from dcsum.sections import SectionKind
from dcsum.tokenization import Tokenizer

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


@pytest.fixture(scope="session")
def whitespace_tokenizer() -> Tokenizer:
    return Tokenizer()


@pytest.fixture(scope="session")
def notes_path() -> Path:
    return DATA / "synthetic_notes.jsonl"


@pytest.fixture(scope="session")
def golden_section_bodies() -> dict[SectionKind, str]:
    raw = json.loads((DATA / "section_bodies.json").read_text(encoding="utf-8"))
    return {SectionKind(k): v for k, v in raw.items()}
