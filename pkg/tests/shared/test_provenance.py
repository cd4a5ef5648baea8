"""Tests for artifact provenance headers."""

import hashlib
from pathlib import Path

import numpy as np

from src.shared.provenance import Provenance, read_header, write_text


def test_for_config() -> None:
    """Test the config digest and the recorded library version."""
    provenance = Provenance.for_config('{"a": 1}', seed=5)

    assert provenance.config_sha256 == hashlib.sha256(b'{"a": 1}').hexdigest()
    assert provenance.seed == 5
    assert provenance.numpy_version == np.__version__
    assert provenance.version


def test_header_entries() -> None:
    """Test provenance keys first, then formatted extras."""
    provenance = Provenance(config_sha256="00", seed=None, version="dev")

    header = provenance.header(delta=0.1, h=2)

    assert list(header)[:4] == ["config_sha256", "seed", "version", "numpy_version"]
    assert header["seed"] == ""
    assert header["delta"] == "0.1"
    assert header["h"] == "2"


def test_write_and_read_header(tmp_path: Path) -> None:
    """Test that headers are recovered and the body follows them."""
    path = tmp_path / "nested" / "artifact.csv"

    write_text(path, {"seed": "3", "note": "a: b"}, "x,y\n1,2\n")

    assert read_header(path) == {"seed": "3", "note": "a: b"}
    assert path.read_text().splitlines()[-2:] == ["x,y", "1,2"]


def test_read_header_without_header(tmp_path: Path) -> None:
    """Test a file without comment lines."""
    path = tmp_path / "plain.csv"
    path.write_text("x\n# not a header\n")

    assert read_header(path) == {}
