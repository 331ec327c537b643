# alkkit/manifest.py
"""
Run manifests: what was run, on which bytes, under which conventions.
"""
from __future__ import annotations
import hashlib
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, Optional

from .config import CONVENTION_VERSION, MANIFEST_DIR
from .utils import canonical_json, logger


def sha256_bytes(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def sha256_file(path: Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for block in iter(lambda: f.read(65536), b""):
            h.update(block)
    return h.hexdigest()


@dataclass
class RunManifest:
    command: str
    argv: list
    inputs: Dict[str, str] = field(default_factory=dict)
    preset: Optional[str] = None
    outputs: Dict[str, str] = field(default_factory=dict)
    convention: str = CONVENTION_VERSION

    def add_inputs(self, paths: Iterable[str]):
        for p in paths:
            path = Path(p)
            if path.is_file():
                self.inputs[str(p)] = sha256_file(path)

    def add_output(self, name: str, data: bytes):
        self.outputs[name] = sha256_bytes(data)

    def as_dict(self) -> dict:
        return {
            "command": self.command,
            "argv": list(self.argv),
            "inputs": dict(self.inputs),
            "convention": self.convention,
            "preset": self.preset,
            "outputs": dict(self.outputs),
        }

    def write(self, directory: Optional[Path] = None) -> Path:
        """Write under a name derived from the content; identical runs share one file."""
        directory = Path(directory or MANIFEST_DIR)
        directory.mkdir(parents=True, exist_ok=True)
        text = canonical_json(self.as_dict())
        path = directory / f"{self.command}-{sha256_bytes(text.encode('utf-8'))[:16]}.json"
        path.write_text(text, encoding="utf-8")
        logger.info("Manifest written to %s", path)
        return path
