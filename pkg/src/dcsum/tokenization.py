"""Token counting and budget truncation.

Two modes: whitespace (default, self-contained) and subword (greedy
longest-match against a plain-text vocabulary, one entry per line ordered
by rank). Token budgets such as the 1596-token input limit are interpreted
under whichever tokenizer is configured; the whitespace counts will not
match a subword model's counts, so commands always report which mode
produced a number.
"""

from __future__ import annotations

import re
from pathlib import Path

from .errors import VocabularyNotLoaded

_WORD = re.compile(r"\S+")


class Tokenizer:
    """Pluggable tokenizer; immutable after construction."""

    def __init__(self, mode: str = "whitespace", vocab_path: str | Path | None = None):
        if mode not in ("whitespace", "subword"):
            raise ValueError(f"unknown tokenizer mode: {mode!r}")
        self.mode = mode
        self._vocab: list[str] | None = None
        if vocab_path is not None:
            self._vocab = _load_vocab(vocab_path)
        if mode == "subword" and self._vocab is None:
            raise VocabularyNotLoaded("subword mode requires a vocabulary file")

    def tokenize(self, text: str) -> list[str]:
        return [tok for tok, _, _ in self._spans(text)]

    def count(self, text: str) -> int:
        return len(self.tokenize(text))

    def truncate(self, text: str, budget: int) -> str:
        """Longest prefix of `text` covering at most `budget` whole tokens."""
        if budget < 0:
            raise ValueError("budget must be >= 0")
        spans = self._spans(text)
        if len(spans) <= budget:
            return text
        if budget == 0:
            return ""
        end = spans[budget - 1][2]
        return text[:end]

    def _spans(self, text: str) -> list[tuple[str, int, int]]:
        """(token, start, end) triples; end offsets are cut points for truncate."""
        if self.mode == "whitespace":
            return [(m.group(), m.start(), m.end()) for m in _WORD.finditer(text)]
        return self._subword_spans(text)

    def _subword_spans(self, text: str) -> list[tuple[str, int, int]]:
        if self._vocab is None:
            raise VocabularyNotLoaded("subword mode requires a vocabulary file")
        by_len = sorted(set(self._vocab), key=len, reverse=True)
        spans: list[tuple[str, int, int]] = []
        for m in _WORD.finditer(text):
            word, base = m.group(), m.start()
            i = 0
            while i < len(word):
                piece = next((v for v in by_len if word.startswith(v, i)), None)
                if piece is None:
                    piece = word[i]  # unknown character falls back to itself
                spans.append((piece, base + i, base + i + len(piece)))
                i += len(piece)
        return spans


def _load_vocab(path: str | Path) -> list[str]:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    vocab = [ln for ln in (l.strip() for l in lines) if ln]
    if not vocab:
        raise VocabularyNotLoaded(f"empty vocabulary file: {path}")
    return vocab
