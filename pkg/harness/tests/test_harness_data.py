import json

import pytest

from ftharness.data import SPECIALS, WordVocab, read_examples, write_generations
from ftharness.errors import BadDataFile


class TestReadExamples:
    def test_reads_prepared_file(self, train_file):
        examples = read_examples(train_file)
        assert len(examples) == 50
        assert examples[0].target == "bhc"
        assert examples[0].input_text.startswith("The patient's name")

    def test_missing_file(self, tmp_path):
        with pytest.raises(BadDataFile):
            read_examples(tmp_path / "nope.jsonl")

    def test_missing_key(self, tmp_path):
        path = tmp_path / "bad.jsonl"
        path.write_text('{"hadm_id": "1"}\n', encoding="utf-8")
        with pytest.raises(BadDataFile):
            read_examples(path)

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.jsonl"
        path.write_text("\n", encoding="utf-8")
        with pytest.raises(BadDataFile):
            read_examples(path)


def test_write_generations_round_trip(tmp_path):
    records = [{"hadm_id": "1", "target": "bhc", "text": "a b c"}]
    path = tmp_path / "gen.jsonl"
    write_generations(records, path)
    assert [json.loads(line) for line in path.read_text().splitlines()] == records


class TestWordVocab:
    def test_build_and_encode(self):
        vocab = WordVocab.build(["a b c", "b d"])
        assert len(vocab) == len(SPECIALS) + 4
        ids = vocab.encode("a d zz")
        assert ids[:2] != [vocab.unk_id, vocab.unk_id]
        assert ids[2] == vocab.unk_id

    def test_decode_drops_specials(self):
        vocab = WordVocab.build(["a b"])
        ids = [vocab.pad_id] + vocab.encode("a b") + [vocab.eos_id, vocab.pad_id]
        assert vocab.decode(ids) == "a b"

    def test_round_trip_through_file(self, tmp_path):
        vocab = WordVocab.build(["alpha beta gamma"])
        path = tmp_path / "vocab.json"
        vocab.save(path)
        loaded = WordVocab.load(path)
        assert loaded.id_to_word == vocab.id_to_word
        assert loaded.encode("beta gamma") == vocab.encode("beta gamma")

    def test_rejects_non_vocab_file(self, tmp_path):
        path = tmp_path / "vocab.json"
        path.write_text('["x", "y", "z"]\n', encoding="utf-8")
        with pytest.raises(ValueError):
            WordVocab.load(path)

    def test_build_is_deterministic(self):
        texts = ["c a b", "b a d"]
        assert WordVocab.build(texts).id_to_word == WordVocab.build(texts).id_to_word
