import json
import os
import shutil
from pathlib import Path

import pytest

from atlas.cases import parse_case
from atlas.coa import ActionMap
from atlas.data import default_data_dir
from atlas.defense import parse_defense_map
from atlas.attack import parse_stix_bundle
from atlas.killchain import PhaseMap

FIXTURE_DIR = default_data_dir()
GOLDEN_DIR = Path(__file__).parent / "golden"


@pytest.fixture(scope="session")
def bundle_bytes() -> bytes:
    return (FIXTURE_DIR / "attack-extract.json").read_bytes()


@pytest.fixture(scope="session")
def bundle_json(bundle_bytes) -> dict:
    return json.loads(bundle_bytes)


@pytest.fixture(scope="session")
def corpus(bundle_bytes):
    return parse_stix_bundle(bundle_bytes)


@pytest.fixture(scope="session")
def defense_map_bytes() -> bytes:
    return (FIXTURE_DIR / "defense-map.json").read_bytes()


@pytest.fixture(scope="session")
def defense_map(defense_map_bytes):
    return parse_defense_map(defense_map_bytes)


@pytest.fixture(scope="session")
def whispergate_bytes() -> bytes:
    return (FIXTURE_DIR / "whispergate.case.json").read_bytes()


@pytest.fixture(scope="session")
def whispergate(whispergate_bytes):
    return parse_case(whispergate_bytes)


@pytest.fixture(scope="session")
def phase_map():
    return PhaseMap.default()


@pytest.fixture(scope="session")
def action_map():
    return ActionMap.default()


@pytest.fixture()
def data_dir_copy(tmp_path):
    """Writable copy of the shipped data directory for mutation tests."""
    target = tmp_path / "data"
    target.mkdir()
    for name in ("attack-extract.json", "defense-map.json", "whispergate.case.json"):
        shutil.copy(FIXTURE_DIR / name, target / name)
    return target


def check_golden(name: str, text: str) -> None:
    """Compare against a golden file; UPDATE_GOLDENS=1 rewrites them."""
    path = GOLDEN_DIR / name
    if os.environ.get("UPDATE_GOLDENS"):
        GOLDEN_DIR.mkdir(exist_ok=True)
        path.write_text(text, encoding="utf-8")
        return
    assert path.is_file(), f"golden file {name} missing; run with UPDATE_GOLDENS=1"
    assert text == path.read_text(encoding="utf-8"), f"output differs from golden {name}"
