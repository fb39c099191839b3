"""Prepared-example and generations JSONL files, plus the word vocabulary.

The harness consumes the preprocessor's prepared-example files verbatim
(keys hadm_id / target / input_text / target_text) and emits generations
files (keys hadm_id / target / text); no re-preprocessing happens here.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import BadDataFile

PAD, EOS, UNK = "<pad>", "</s>", "<unk>"
SPECIALS = (PAD, EOS, UNK)


@dataclass(frozen=True)
class Example:
    hadm_id: str
    target: str
    input_text: str
    target_text: str


def read_examples(path: str | Path) -> list[Example]:
    path = Path(path)
    if not path.exists():
        raise BadDataFile(path, "no such file")
    examples = []
    with path.open(encoding="utf-8") as f:
        for i, line in enumerate(f):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
                examples.append(
                    Example(rec["hadm_id"], rec["target"], rec["input_text"],
                            rec["target_text"])
                )
            except (json.JSONDecodeError, KeyError, TypeError) as e:
                raise BadDataFile(path, f"line {i}: {e}") from e
    if not examples:
        raise BadDataFile(path, "no examples")
    return examples


def write_generations(records: list[dict], path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8") as f:
        for rec in records:
            f.write(json.dumps(rec, ensure_ascii=False) + "\n")


class WordVocab:
    """Whitespace-word vocabulary with pad/eos/unk specials.

    Encoding splits on whitespace; decoding joins with single spaces and
    drops specials. The id order is frozen at build time and round-trips
    through a JSON artifact, so a saved model keeps a stable vocabulary.
    """

    def __init__(self, words: list[str]):
        self.id_to_word = list(SPECIALS) + list(words)
        if len(set(self.id_to_word)) != len(self.id_to_word):
            raise ValueError("duplicate words in vocabulary")
        self.word_to_id = {w: i for i, w in enumerate(self.id_to_word)}

    def __len__(self) -> int:
        return len(self.id_to_word)

    @property
    def pad_id(self) -> int:
        return self.word_to_id[PAD]

    @property
    def eos_id(self) -> int:
        return self.word_to_id[EOS]

    @property
    def unk_id(self) -> int:
        return self.word_to_id[UNK]

    @classmethod
    def build(cls, texts: list[str]) -> "WordVocab":
        seen: dict[str, None] = {}
        for text in texts:
            for word in text.split():
                seen.setdefault(word)
        return cls([w for w in seen if w not in SPECIALS])

    def encode(self, text: str) -> list[int]:
        unk = self.unk_id
        return [self.word_to_id.get(w, unk) for w in text.split()]

    def decode(self, ids: list[int]) -> str:
        special = {self.pad_id, self.eos_id, self.unk_id}
        return " ".join(self.id_to_word[i] for i in ids if i not in special)

    def save(self, path: str | Path) -> None:
        Path(path).write_text(
            json.dumps(self.id_to_word, ensure_ascii=False) + "\n", encoding="utf-8"
        )

    @classmethod
    def load(cls, path: str | Path) -> "WordVocab":
        words = json.loads(Path(path).read_text(encoding="utf-8"))
        if words[: len(SPECIALS)] != list(SPECIALS):
            raise ValueError(f"not a vocabulary file: {path}")
        return cls(words[len(SPECIALS):])
