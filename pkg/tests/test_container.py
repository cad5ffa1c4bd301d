from __future__ import annotations

import struct

import numpy as np
import pytest

from dna_ensembles.container import FORMAT_VERSION, MAGIC, read_container, write_container
from dna_ensembles.decor import FeatureCache, build_cache, load_cache, save_cache
from dna_ensembles.model import infer, init_params, save_params
from tests.helpers import TOY_ARCH, dataset_from_arrays


def _arrays():
    return {"a": np.arange(6.0).reshape(2, 3), "b": np.array([np.pi])}


def test_container_roundtrip(tmp_path):
    path = tmp_path / "blob.bin"
    write_container(path, "test-kind", {"note": "x"}, _arrays())

    meta, arrays = read_container(path, "test-kind")
    assert meta == {"note": "x"}
    np.testing.assert_array_equal(arrays["a"], _arrays()["a"])
    assert arrays["b"][0] == np.pi
    assert not arrays["a"].flags.writeable


def test_identical_inputs_give_identical_bytes(tmp_path):
    write_container(tmp_path / "one", "k", {"n": 1}, _arrays())
    write_container(tmp_path / "two", "k", {"n": 1}, _arrays())
    assert (tmp_path / "one").read_bytes() == (tmp_path / "two").read_bytes()


def test_bad_magic(tmp_path):
    path = tmp_path / "blob.bin"
    write_container(path, "k", {}, _arrays())
    raw = bytearray(path.read_bytes())
    raw[:4] = b"NOPE"
    path.write_bytes(bytes(raw))
    with pytest.raises(ValueError, match="not a dna_ensembles container"):
        read_container(path, "k")


def test_unsupported_version(tmp_path):
    path = tmp_path / "blob.bin"
    write_container(path, "k", {}, _arrays())
    raw = bytearray(path.read_bytes())
    struct.pack_into("<I", raw, len(MAGIC), FORMAT_VERSION + 1)
    path.write_bytes(bytes(raw))
    with pytest.raises(ValueError, match="format version 2"):
        read_container(path, "k")


def test_wrong_kind(tmp_path):
    path = tmp_path / "blob.bin"
    write_container(path, "feature-cache", {}, _arrays())
    with pytest.raises(ValueError, match="expected 'classifier-params'"):
        read_container(path, "classifier-params")


@pytest.mark.parametrize("keep", [3, 20, -5])
def test_truncated_file(tmp_path, keep):
    path = tmp_path / "blob.bin"
    write_container(path, "k", {}, _arrays())
    raw = path.read_bytes()
    path.write_bytes(raw[:keep])
    with pytest.raises(ValueError, match="truncated|corrupt"):
        read_container(path, "k")


def test_flipped_payload_byte_fails_the_checksum(tmp_path):
    path = tmp_path / "blob.bin"
    write_container(path, "k", {}, _arrays())
    raw = bytearray(path.read_bytes())
    raw[-1] ^= 0xFF
    path.write_bytes(bytes(raw))
    with pytest.raises(ValueError, match="checksum"):
        read_container(path, "k")


def test_cache_rows_equal_inference_on_the_training_set(tmp_path):
    rng = np.random.default_rng(0)
    train = dataset_from_arrays(rng.normal(size=(7, TOY_ARCH.input_length)), [0, 1, 2] * 2 + [0])
    params = init_params(TOY_ARCH, 1)

    cache = build_cache(params, train, model_id="arm0")
    _logits, features = infer(params, train.signals())
    np.testing.assert_array_equal(cache.features, features)
    assert cache.record_ids == train.ids

    batch = cache.rows([4, 1])
    np.testing.assert_array_equal(batch.values.data, features[[4, 1]])
    assert batch.sample_indices.tolist() == [4, 1]

    save_cache(cache, tmp_path / "arm0.cache")
    assert load_cache(tmp_path / "arm0.cache", model_id="arm0").equals(cache)
    with pytest.raises(ValueError, match="expected 'arm1'"):
        load_cache(tmp_path / "arm0.cache", model_id="arm1")


def test_cache_missing_rows():
    cache = FeatureCache("arm0", np.zeros((3, 2)), ("a", "b", "c"))
    with pytest.raises(ValueError, match="missing rows"):
        cache.rows([0, 3])
    with pytest.raises(ValueError, match="unique"):
        cache.rows([1, 1])


def test_params_and_cache_files_are_not_interchangeable(tmp_path):
    save_params(init_params(TOY_ARCH, 0), tmp_path / "arm0.params")
    with pytest.raises(ValueError, match="classifier-params"):
        load_cache(tmp_path / "arm0.params")
