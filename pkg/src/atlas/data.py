"""Default data locations and knowledge-base loading helpers.

The package ships a desk-scale data directory (ATT&CK extract, defense map,
sample case). `ATLAS_DATA_DIR` points somewhere else when set; CLI flags win
over the environment.
"""

from __future__ import annotations

import os
from pathlib import Path

from .attack import Corpus, parse_stix_bundle
from .defense import DefenseMap, parse_defense_map

ATTACK_FILENAME = "attack-extract.json"
DEFENSE_FILENAME = "defense-map.json"
CASE_SUFFIX = ".case.json"

DATA_DIR_ENV = "ATLAS_DATA_DIR"
BIND_ADDR_ENV = "ATLAS_BIND_ADDR"
DEFAULT_BIND = "127.0.0.1:8787"


def default_data_dir() -> Path:
    env = os.environ.get(DATA_DIR_ENV)
    if env:
        return Path(env)
    return Path(__file__).resolve().parent / "fixtures"


def load_corpus(path: Path | str | None = None) -> Corpus:
    bundle = Path(path) if path else default_data_dir() / ATTACK_FILENAME
    return parse_stix_bundle(bundle.read_bytes())


def load_defense_map(path: Path | str | None = None) -> DefenseMap:
    doc = Path(path) if path else default_data_dir() / DEFENSE_FILENAME
    return parse_defense_map(doc.read_bytes())
