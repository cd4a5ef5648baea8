"""Provenance headers for delimited-text artifacts.

Every text artifact starts with ``# key: value`` lines. The readers skip them
as comments and can recover them with :func:`read_header`.
"""

import hashlib
from importlib import metadata
from pathlib import Path
from typing import Any, Dict, Mapping, Optional

import numpy as np
from pydantic import BaseModel

PACKAGE_NAME = "ev_charging_placement"


def package_version() -> str:
    """Installed version of this package, or "dev" when running from a checkout."""
    try:
        return metadata.version(PACKAGE_NAME)
    except metadata.PackageNotFoundError:
        return "dev"


class Provenance(BaseModel):
    """Where an artifact came from."""

    config_sha256: str
    seed: Optional[int] = None
    version: str = ""
    numpy_version: str = ""

    @classmethod
    def for_config(cls, canonical_config: str, seed: Optional[int]) -> "Provenance":
        """Provenance for a canonical (sorted-key JSON) config dump."""
        return cls(
            config_sha256=hashlib.sha256(canonical_config.encode()).hexdigest(),
            seed=seed,
            version=package_version(),
            numpy_version=np.__version__,
        )

    def header(self, **extra: Any) -> Dict[str, str]:
        """Header entries: provenance first, then artifact-specific keys."""
        entries = {
            "config_sha256": self.config_sha256,
            "seed": "" if self.seed is None else str(self.seed),
            "version": self.version,
            "numpy_version": self.numpy_version,
        }
        entries.update({key: _format(value) for key, value in extra.items()})
        return entries


def _format(value: Any) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def header_text(header: Mapping[str, str]) -> str:
    """Render header entries as comment lines."""
    return "".join(f"# {key}: {value}\n" for key, value in header.items())


def write_text(path: Path, header: Mapping[str, str], body: str) -> None:
    """Write a header followed by a body, creating parent directories."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="\n") as handle:
        handle.write(header_text(header))
        handle.write(body)


def read_header(path: Path) -> Dict[str, str]:
    """Leading ``# key: value`` lines of a text artifact."""
    header: Dict[str, str] = {}
    with path.open("r", encoding="utf-8") as handle:
        for line in handle:
            if not line.startswith("#"):
                break
            key, sep, value = line[1:].strip().partition(":")
            if sep:
                header[key.strip()] = value.strip()
    return header
