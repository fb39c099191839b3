import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dcsum.errors import VocabularyNotLoaded
from dcsum.tokenization import Tokenizer


def test_whitespace_basic(whitespace_tokenizer):
    assert whitespace_tokenizer.tokenize("a b  c") == ["a", "b", "c"]
    assert whitespace_tokenizer.tokenize("") == []
    assert whitespace_tokenizer.count("one\ntwo\tthree") == 3


def test_truncate_under_budget(whitespace_tokenizer):
    assert whitespace_tokenizer.truncate("a b c", 5) == "a b c"
    assert whitespace_tokenizer.truncate("a b c", 0) == ""
    assert whitespace_tokenizer.truncate("a b c d e f", 4) == "a b c d"


def test_truncate_random_long_text(whitespace_tokenizer):
    rng = random.Random(5)
    text = " ".join(f"w{rng.randint(0, 99)}" for _ in range(2000))
    out = whitespace_tokenizer.truncate(text, 1596)
    assert whitespace_tokenizer.count(out) == 1596
    assert text.startswith(out)


def test_subword_requires_vocab():
    with pytest.raises(VocabularyNotLoaded):
        Tokenizer(mode="subword")


def test_subword_greedy_segmentation(tmp_path):
    vocab = tmp_path / "vocab.txt"
    vocab.write_text("appendic\nitis\napp\nend\nic\na\n", encoding="utf-8")
    tok = Tokenizer(mode="subword", vocab_path=vocab)
    # reference segmentation computed by hand: greedy longest match
    assert tok.tokenize("appendicitis") == ["appendic", "itis"]
    assert tok.tokenize("appendix") == ["app", "end", "i", "x"]
    assert tok.tokenize("a appendicitis") == ["a", "appendic", "itis"]


def test_subword_truncate_retokenizes_identically(tmp_path):
    vocab = tmp_path / "vocab.txt"
    vocab.write_text("ab\nabc\nc\nd\n", encoding="utf-8")
    tok = Tokenizer(mode="subword", vocab_path=vocab)
    text = "abcd abcabc dd"
    full = tok.tokenize(text)
    for budget in range(len(full) + 2):
        prefix = tok.truncate(text, budget)
        assert tok.tokenize(prefix) == full[: min(budget, len(full))]
        assert text.startswith(prefix)


@given(st.text(alphabet=" \t\nabc<>", max_size=80), st.integers(0, 20))
def test_truncate_idempotent_and_bounded(text, budget):
    tok = Tokenizer()
    out = tok.truncate(text, budget)
    assert tok.count(out) <= budget
    assert tok.truncate(out, budget) == out


@given(st.lists(st.text(alphabet="ab<sep>", min_size=1, max_size=6), max_size=20))
def test_whitespace_run_insensitive(words):
    tok = Tokenizer()
    single = " ".join(words)
    messy = "  \t".join(words) + " \n"
    assert tok.tokenize(single) == tok.tokenize(messy)
