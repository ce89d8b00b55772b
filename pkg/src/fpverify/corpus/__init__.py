"""Frozen ground-truth data: presentations, derivation scenarios, and the
certificates backing them, with programmatic access and checksum pinning.

Layout: ``<id>.grp`` presentation files in the textual grammar,
``scenarios.json`` registering every scenario with its expected outcome and
the verbatim source claim it reproduces, ``*.certs.json`` /
``*.derivations.json`` frozen witnesses, and ``manifest.json`` pinning a
sha256 per file so silent edits fail loudly in tests.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

from ..certificates import Certificate, Derivation, load_certificates
from ..presentation import Presentation, parse_presentation
from ..words import CONVENTION_DEFAULT

CORPUS_DIR = Path(__file__).parent

MANIFEST = "manifest.json"
REGISTRY = "scenarios.json"


@dataclass(frozen=True)
class Scenario:
    id: str
    description: str
    files: dict
    expected: dict
    source_claim: str
    source_location: str

    def presentation(self, key: str = "presentation",
                     convention: str = CONVENTION_DEFAULT) -> Presentation:
        return load_corpus_presentation(self.files[key], convention=convention)

    def certificates(self, key: str = "certificates") -> dict[int, Certificate]:
        return load_certificates(corpus_path(self.files[key]))

    def derivations(self, key: str = "derivations") -> dict[int, Derivation]:
        with open(corpus_path(self.files[key]), encoding="utf-8") as fh:
            data = json.load(fh)
        return {int(k): Derivation.from_json(v) for k, v in data.items()}


def corpus_path(name: str) -> Path:
    path = CORPUS_DIR / name
    if not path.is_file():
        raise FileNotFoundError(f"corpus file not found: {name}")
    return path


def load_corpus_presentation(name: str,
                             convention: str = CONVENTION_DEFAULT) -> Presentation:
    with open(corpus_path(name), encoding="utf-8") as fh:
        return parse_presentation(fh.read(), convention=convention)


@lru_cache(maxsize=None)
def _registry() -> dict[str, Scenario]:
    with open(corpus_path(REGISTRY), encoding="utf-8") as fh:
        entries = json.load(fh)
    out: dict[str, Scenario] = {}
    for e in entries:
        out[e["id"]] = Scenario(
            id=e["id"],
            description=e["description"],
            files=e.get("files", {}),
            expected=e.get("expected", {}),
            source_claim=e["source_claim"],
            source_location=e.get("source_location", ""),
        )
    return out


def list_scenarios() -> list[Scenario]:
    return [s for _, s in sorted(_registry().items())]


def load_scenario(scenario_id: str) -> Scenario:
    registry = _registry()
    if scenario_id not in registry:
        known = ", ".join(sorted(registry))
        raise KeyError(f"unknown scenario {scenario_id!r}; known: {known}")
    s = registry[scenario_id]
    # validate that every referenced file exists and every .grp parses
    for name in s.files.values():
        path = corpus_path(name)
        if path.suffix == ".grp":
            load_corpus_presentation(name)
    return s


def file_sha256(name: str) -> str:
    return hashlib.sha256(corpus_path(name).read_bytes()).hexdigest()


def verify_checksums() -> None:
    """Raise if any corpus file is missing or differs from the manifest."""
    with open(corpus_path(MANIFEST), encoding="utf-8") as fh:
        manifest = json.load(fh)
    for name, digest in sorted(manifest.items()):
        actual = file_sha256(name)
        if actual != digest:
            raise ValueError(
                f"corpus file {name} checksum mismatch: {actual} != {digest}")
    on_disk = {p.name for p in CORPUS_DIR.iterdir()
               if p.is_file() and p.name not in (MANIFEST, "__init__.py")
               and not p.name.endswith(".pyc")}
    extra = on_disk - set(manifest)
    missing = set(manifest) - on_disk
    if extra or missing:
        raise ValueError(
            f"corpus manifest out of date: extra={sorted(extra)} "
            f"missing={sorted(missing)}")
