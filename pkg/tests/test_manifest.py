"""Atomic writes, checksums, and manifest round trips."""

import hashlib
import json
import os

import pytest

import locnet
from locnet.config import dump_config, loads_config
from locnet.experiment import ExperimentConfig
from locnet.manifest import (
    MANIFEST_NAME,
    RunManifest,
    atomic_write_text,
    sha256_file,
    write_outputs,
)


def test_atomic_write_creates_and_replaces(tmp_path):
    target = tmp_path / "out.txt"
    atomic_write_text(target, "first\n")
    assert target.read_text() == "first\n"
    atomic_write_text(target, "second\n")
    assert target.read_text() == "second\n"
    # no temp residue
    assert sorted(p.name for p in tmp_path.iterdir()) == ["out.txt"]


def test_sha256_file_matches_hashlib(tmp_path):
    target = tmp_path / "blob.bin"
    payload = b"degree,node\n1,2\n" * 1000
    target.write_bytes(payload)
    assert sha256_file(target) == hashlib.sha256(payload).hexdigest()


def test_manifest_json_round_trip():
    manifest = RunManifest(
        version="0.1.0",
        seed=42,
        created="2024-05-01T12:00:00+00:00",
        config_ini="[experiment]\nseed = 42\n",
        outputs={"stats.csv": "ab" * 32},
    )
    back = RunManifest.from_json(manifest.to_json())
    assert back == manifest


def test_write_outputs_produces_verified_checksums(tmp_path):
    cfg = ExperimentConfig(seed=7)
    files = {
        "stats.csv": "m4,node,mean,std\n1.0,1,2.0,0.5\n",
        "report.json": json.dumps({"node": 4}) + "\n",
    }
    manifest_path = write_outputs(tmp_path / "run", files, dump_config(cfg), cfg.seed)
    assert manifest_path.name == MANIFEST_NAME
    manifest = RunManifest.load(manifest_path)
    assert manifest.version == locnet.__version__
    assert manifest.seed == 7
    assert set(manifest.outputs) == set(files)
    for name, digest in manifest.outputs.items():
        assert sha256_file(tmp_path / "run" / name) == digest
    # the embedded snapshot parses back to the run's configuration
    assert loads_config(manifest.config_ini).seed == 7
    # timestamp is ISO-8601 UTC
    assert manifest.created.endswith("+00:00")


def test_write_outputs_content_is_byte_exact(tmp_path):
    files = {"a.txt": "alpha\n", "b.txt": "beta\n"}
    write_outputs(tmp_path, files, "", 1)
    assert (tmp_path / "a.txt").read_bytes() == b"alpha\n"
    assert (tmp_path / "b.txt").read_bytes() == b"beta\n"


def test_manifest_excluded_from_its_own_outputs(tmp_path):
    write_outputs(tmp_path, {"a.txt": "x\n"}, "", 1)
    manifest = RunManifest.load(tmp_path / MANIFEST_NAME)
    assert MANIFEST_NAME not in manifest.outputs


def test_atomic_write_cleans_up_on_failure(tmp_path, monkeypatch):
    target = tmp_path / "out.txt"

    def boom(src, dst):
        raise OSError("simulated rename failure")

    monkeypatch.setattr(os, "replace", boom)
    with pytest.raises(OSError, match="simulated"):
        atomic_write_text(target, "data")
    assert list(tmp_path.iterdir()) == []
