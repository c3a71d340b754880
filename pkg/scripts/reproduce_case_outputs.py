#!/usr/bin/env python3
"""Emit every artifact for the bundled WhisperGate case into out/.

Produces the adversary profile and Navigator layer for APT28, the full case
report, the course-of-action matrix in all three formats, the pivot example
and the maximal attack paths.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from atlas.cases import build_report, parse_case, thread_placements  # noqa: E402
from atlas.cli import _profile_markdown  # noqa: E402
from atlas.coa import ActionMap, build_coa_matrix, coa_to_json, render_coa  # noqa: E402
from atlas.data import default_data_dir, load_corpus, load_defense_map  # noqa: E402
from atlas.diamond import enumerate_paths, pivot  # noqa: E402
from atlas.cases import event_to_json  # noqa: E402
from atlas.killchain import PhaseMap  # noqa: E402
from atlas.profiles import build_profile, export_navigator_layer, layer_to_json  # noqa: E402

OUT = ROOT / "out"


def main() -> None:
    OUT.mkdir(exist_ok=True)
    corpus = load_corpus()
    defense_map = load_defense_map()
    case = parse_case((default_data_dir() / "whispergate.case.json").read_bytes())

    profile = build_profile(corpus, "APT28")
    (OUT / "apt28-profile.md").write_text(_profile_markdown(profile), encoding="utf-8")
    (OUT / "apt28.layer.json").write_text(
        layer_to_json(export_navigator_layer(profile)), encoding="utf-8"
    )

    report = build_report(case, corpus, defense_map, PhaseMap.default(), ActionMap.default())
    (OUT / "whispergate-report.md").write_text(report.markdown(), encoding="utf-8")

    matrix = build_coa_matrix(
        case.observation_pairs(),
        PhaseMap.default().with_overrides(case.phase_overrides),
        defense_map,
        ActionMap.default(),
        extra_placements=thread_placements(case.thread),
    )
    (OUT / "whispergate-coa.md").write_text(render_coa(matrix, "markdown"), encoding="utf-8")
    (OUT / "whispergate-coa.csv").write_text(render_coa(matrix, "csv"), encoding="utf-8")
    (OUT / "whispergate-coa.json").write_text(
        json.dumps(coa_to_json(matrix), indent=2, ensure_ascii=False) + "\n", encoding="utf-8"
    )

    discord_events = [event_to_json(e) for e in pivot(case.thread, "infrastructure", "Discord")]
    (OUT / "pivot-discord.json").write_text(
        json.dumps(discord_events, indent=2, ensure_ascii=False) + "\n", encoding="utf-8"
    )
    (OUT / "attack-paths.json").write_text(
        json.dumps(enumerate_paths(case.thread)) + "\n", encoding="utf-8"
    )

    for artifact in sorted(OUT.iterdir()):
        print(f"wrote {artifact}")


if __name__ == "__main__":
    main()
