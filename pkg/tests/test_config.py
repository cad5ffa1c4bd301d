from __future__ import annotations

import json
from pathlib import Path

import pytest

from dna_ensembles.config import (
    OUTPUT_ROOT_ENV,
    ConfigError,
    RunConfig,
    config_from_dict,
    default_config,
    load_config,
    resolve_output,
)
from tests.helpers import tiny_run_config


def test_empty_document_gives_the_defaults():
    cfg = config_from_dict({})
    assert cfg == default_config() == load_config(None)
    assert cfg.arch.input_length == cfg.data.length == 512
    assert cfg.arch.feature_dim == 64
    assert cfg.decor.r == 50 and cfg.decor.lam == 0.2
    assert cfg.bank.cutoff == 0.2
    assert cfg.train.epochs == 200 and cfg.train.batch_size == 80
    assert cfg.attack.epsilons == (0.1, 0.25, 0.5, 1.0, 1.5)


def test_sections_reach_their_owners(tmp_path):
    cfg = config_from_dict(tiny_run_config(tmp_path))
    assert cfg.data.length == 64
    assert cfg.arch.input_length == 64
    assert cfg.arch.num_classes == 3
    assert cfg.arch.conv_blocks == ((4, 5, 2), (8, 5, 2))
    assert cfg.train.decor.r == 4
    assert cfg.train.learning_rate == 0.01
    assert cfg.attack.steps == 3
    assert [spec.name for spec in cfg.attack.cells()] == [
        "pgd-eps0",
        "pgd-eps0.5",
        "sap-eps0",
        "sap-eps0.5",
    ]


def test_config_survives_its_own_dictionary(tmp_path):
    cfg = config_from_dict(tiny_run_config(tmp_path))
    again = config_from_dict(json.loads(json.dumps(cfg.to_dict())))
    assert again == cfg


@pytest.mark.parametrize(
    ("document", "key"),
    [
        ({"bogus": 1}, "bogus"),
        ({"train": {"epoch": 5}}, "train.epoch"),
        ({"data": {"synthetic": {"classes": 3}}}, "data.synthetic.classes"),
        ({"train": {"decor": {"r": 4}}}, "train.decor"),
        ({"attack": {"alpha": 0.1}}, "attack.alpha"),
    ],
)
def test_unknown_keys_name_their_path(document, key):
    with pytest.raises(ConfigError, match="unknown key") as info:
        config_from_dict(document)
    assert info.value.key == key
    assert str(info.value).startswith(f"{key}: ")


@pytest.mark.parametrize(
    ("document", "key", "type_name"),
    [
        ({"train": {"epochs": "6"}}, "train.epochs", "str"),
        ({"decor": {"r": True}}, "decor.r", "bool"),
        ({"bank": {"cutoff": "low"}}, "bank.cutoff", "str"),
        ({"arch": {"conv_blocks": 3}}, "arch.conv_blocks", "int"),
        ({"data": {"manifest": 7}}, "data.manifest", "int"),
        ({"attack": {"kernel_widths": [5.9]}}, "attack.kernel_widths", "float"),
        ({"arch": {"conv_blocks": [[4, 5]]}}, "arch.conv_blocks", "list"),
        ({"attack": {"epsilons": ["0.5"]}}, "attack.epsilons", "str"),
    ],
)
def test_wrong_types_are_rejected(document, key, type_name):
    with pytest.raises(ConfigError, match=f"wrong type {type_name}") as info:
        config_from_dict(document)
    assert info.value.key == key


def test_integers_are_accepted_for_floats():
    cfg = config_from_dict({"train": {"learning_rate": 1}, "decor": {"lam": 0}})
    assert cfg.train.learning_rate == 1
    assert cfg.decor.lam == 0


@pytest.mark.parametrize(
    ("document", "key", "match"),
    [
        ({"train": {"epochs": 0}}, "train", "epochs must be at least 1"),
        ({"decor": {"lam": -1.0}}, "decor", "non-negative"),
        ({"bank": {"cutoff": 0.49}}, "bank", "outside"),
        ({"attack": {"families": ["fgsm"]}}, "attack", "fgsm"),
        ({"attack": {"kernel_widths": [4, 8]}}, "attack", "positive odd integers"),
        ({"attack": {"kernel_widths": []}}, "attack", "at least one kernel width"),
        ({"attack": {"steps": 0}}, "attack", "steps must be an integer of at least 1"),
        ({"data": {"train_fraction": 1.0}}, "data", "train_fraction"),
    ],
)
def test_invalid_values_are_reported_per_section(document, key, match):
    with pytest.raises(ConfigError, match=match) as info:
        config_from_dict(document)
    assert info.value.key == key


def test_cross_section_checks():
    with pytest.raises(ConfigError) as info:
        config_from_dict({"arch": {"input_length": 256}})
    assert info.value.key == "arch.input_length"

    with pytest.raises(ConfigError) as info:
        config_from_dict({"arch": {"feature_dim": 32}})
    assert info.value.key == "decor.r"


def test_manifest_and_synthetic_are_exclusive():
    cfg = config_from_dict({"data": {"manifest": "data/manifest.csv", "length": 256}})
    assert cfg.data.synthetic is None
    assert cfg.data.manifest == "data/manifest.csv"
    assert cfg.arch.input_length == 256

    with pytest.raises(ConfigError, match="exactly one"):
        config_from_dict({"data": {"manifest": "m.csv", "synthetic": {}}})


def test_data_length_follows_the_generator():
    cfg = config_from_dict({"data": {"synthetic": {"length": 128}}})
    assert cfg.data.length == 128
    assert cfg.arch.input_length == 128

    cropped = config_from_dict({"data": {"synthetic": {"length": 128}, "length": 100}})
    assert cropped.data.length == 100


def test_load_config_reports_unreadable_files(tmp_path):
    with pytest.raises(ConfigError, match="does not exist"):
        load_config(tmp_path / "missing.json")

    broken = tmp_path / "broken.json"
    broken.write_text("{not json", encoding="utf-8")
    with pytest.raises(ConfigError, match="not valid JSON"):
        load_config(broken)

    listed = tmp_path / "list.json"
    listed.write_text("[]", encoding="utf-8")
    with pytest.raises(ConfigError, match="JSON object"):
        load_config(listed)


def test_output_root_override(monkeypatch, tmp_path):
    monkeypatch.delenv(OUTPUT_ROOT_ENV, raising=False)
    assert RunConfig().output_path("data") == Path("runs/default/data")

    monkeypatch.setenv(OUTPUT_ROOT_ENV, str(tmp_path))
    assert RunConfig().output_path("data") == tmp_path / "runs" / "default" / "data"
    absolute = tmp_path / "elsewhere"
    assert resolve_output(absolute) == absolute


def test_config_error_is_a_value_error():
    error = ConfigError("train.epochs", "wrong type str")
    assert isinstance(error, ValueError)
    assert str(error) == "train.epochs: wrong type str"
    assert str(ConfigError("", "plain")) == "plain"


def test_odd_kernel_widths_are_kept_as_integers():
    cfg = config_from_dict({"attack": {"kernel_widths": [3, 7], "steps": 2}})
    assert cfg.attack.kernel_widths == (3, 7)
    sap = [spec for spec in cfg.attack.cells() if spec.family.value == "sap"]
    assert all(spec.kernels == ((3, 0.75), (7, 1.75)) and spec.steps == 2 for spec in sap)
