import pytest

from ftharness.config import MAX_LENGTHS, AdapterConfig, GenConfig, TrainConfig


class TestTrainConfig:
    def test_defaults(self):
        config = TrainConfig()
        assert config.batch_size == 2
        assert config.epochs == 4
        assert config.learning_rate == 1e-4
        assert config.fp16 is True
        assert config.weight_decay == 0.01

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"batch_size": 0},
            {"epochs": -1},
            {"learning_rate": 0.0},
            {"weight_decay": -0.1},
        ],
    )
    def test_rejects_invalid(self, kwargs):
        with pytest.raises(ValueError):
            TrainConfig(**kwargs)


class TestAdapterConfig:
    def test_defaults(self):
        config = AdapterConfig()
        assert config.rank == 4
        assert config.alpha == 16.0
        assert config.dropout == 0.05
        assert config.targets == ("q", "v")

    @pytest.mark.parametrize(
        "kwargs",
        [{"rank": 0}, {"dropout": 1.0}, {"targets": ()}],
    )
    def test_rejects_invalid(self, kwargs):
        with pytest.raises(ValueError):
            AdapterConfig(**kwargs)

    def test_dict_round_trip(self):
        config = AdapterConfig(rank=8, alpha=32.0, dropout=0.1, targets=("q",))
        assert AdapterConfig.from_dict(config.to_dict()) == config


class TestGenConfig:
    def test_defaults(self):
        config = GenConfig()
        assert config.min_length == 10
        assert config.num_beams == 4
        assert config.do_sample is True
        assert config.length_penalty == 1.1
        assert config.no_repeat_ngram_size == 4
        assert config.max_length_for("bhc") == 832
        assert config.max_length_for("di") == 792
        assert MAX_LENGTHS == {"bhc": 832, "di": 792}

    def test_unknown_target(self):
        with pytest.raises(ValueError):
            GenConfig().max_length_for("nope")

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"min_length": 0},
            {"num_beams": 0},
            {"no_repeat_ngram_size": 0},
            {"min_length": 50, "max_lengths": {"bhc": 40}},
        ],
    )
    def test_rejects_invalid(self, kwargs):
        with pytest.raises(ValueError):
            GenConfig(**kwargs)
