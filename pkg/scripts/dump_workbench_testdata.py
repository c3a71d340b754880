#!/usr/bin/env python3
"""Capture live service responses as workbench test data.

The frontend's unit tests replay these payloads, so the mock data cannot
drift from the real API. Rerun after any service or fixture change.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from fastapi.testclient import TestClient  # noqa: E402

from atlas.service import build_context, create_app  # noqa: E402

OUT = ROOT / "frontend" / "tests" / "testdata"

DUMPS = {
    "groups.json": "/groups",
    "apt28_profile.json": "/groups/APT28/profile",
    "whispergate_case.json": "/cases/whispergate",
    "whispergate_coa.json": "/cases/whispergate/coa",
    "whispergate_narrative.json": "/cases/whispergate/narrative",
}


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    client = TestClient(create_app(build_context()))
    for filename, path in DUMPS.items():
        response = client.get(path)
        response.raise_for_status()
        (OUT / filename).write_text(
            json.dumps(response.json(), indent=2, ensure_ascii=False) + "\n", encoding="utf-8"
        )
        print(f"wrote {OUT / filename}")


if __name__ == "__main__":
    main()
