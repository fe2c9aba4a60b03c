"""Run manifests and atomic artifact emission.

Every command that emits files also writes ``manifest.json`` recording
the toolkit version, seed, full configuration snapshot (INI text that
parses back to the run's configuration) and a sha256 checksum per
output file.  Files land atomically: content goes to a temporary file
in the target directory first, then replaces the destination, so a
crashed run never leaves a half-written artifact behind.

Replaying the manifest's config and seed reproduces the checksummed
files byte for byte; the manifest itself is excluded from that
guarantee because its timestamp field necessarily differs run to run.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from . import __version__

__all__ = ["RunManifest", "atomic_write_text", "sha256_file", "write_outputs"]

MANIFEST_NAME = "manifest.json"


def atomic_write_text(path: str | Path, text: str) -> Path:
    """Write ``text`` to ``path`` via a same-directory temp file + rename."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise
    return path


def sha256_file(path: str | Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


@dataclass(frozen=True)
class RunManifest:
    """Provenance record written alongside every output set."""

    version: str
    seed: int
    created: str
    config_ini: str
    outputs: dict[str, str] = field(default_factory=dict)

    def to_json(self) -> str:
        payload = {
            "version": self.version,
            "seed": self.seed,
            "created": self.created,
            "outputs": self.outputs,
            "config_ini": self.config_ini,
        }
        return json.dumps(payload, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "RunManifest":
        data = json.loads(text)
        return cls(
            version=data["version"],
            seed=data["seed"],
            created=data["created"],
            config_ini=data["config_ini"],
            outputs=dict(data["outputs"]),
        )

    @classmethod
    def load(cls, path: str | Path) -> "RunManifest":
        return cls.from_json(Path(path).read_text(encoding="utf-8"))


def write_outputs(
    out_dir: str | Path, files: dict[str, str], config_ini: str, seed: int
) -> Path:
    """Atomically write named text artifacts plus their manifest.

    ``files`` maps file name to full content.  Returns the manifest path.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    checksums = {}
    for name, text in files.items():
        target = out_dir / name
        atomic_write_text(target, text)
        checksums[name] = sha256_file(target)
    manifest = RunManifest(
        version=__version__,
        seed=seed,
        created=datetime.now(timezone.utc).isoformat(timespec="seconds"),
        config_ini=config_ini,
        outputs=checksums,
    )
    atomic_write_text(out_dir / MANIFEST_NAME, manifest.to_json())
    return out_dir / MANIFEST_NAME
