import json

import pytest

from atlas.attack import Tactic
from atlas.cases import (
    Case,
    Observation,
    build_report,
    parse_case,
    serialize_case,
)
from atlas.errors import ValidationError


class TestParse:
    def test_whispergate_observation_count(self, whispergate):
        assert len(whispergate.observations) == 8
        assert {o.technique for o in whispergate.observations} == {
            "T1059.003", "T1059.001", "T1542.003", "T1027",
            "T1083", "T1105", "T1561", "T1485",
        }

    def test_minimal_case(self):
        case = parse_case(json.dumps({"id": "demo", "title": "Demo"}))
        assert case.id == "demo"
        assert case.thread.events == ()

    def test_duplicate_event_ids_rejected(self):
        doc = {
            "id": "demo",
            "thread": {
                "events": [
                    {"id": 1, "phase": "delivery"},
                    {"id": 1, "phase": "delivery"},
                ],
                "arcs": [],
            },
        }
        with pytest.raises(ValidationError, match="duplicate event id 1") as excinfo:
            parse_case(json.dumps(doc))
        assert excinfo.value.path == "thread"

    def test_malformed_technique_id_has_path(self):
        doc = {"id": "demo", "observations": [{"tactic": "execution", "technique": "T12"}]}
        with pytest.raises(ValidationError) as excinfo:
            parse_case(json.dumps(doc))
        assert excinfo.value.path == "observations[0].technique"

    def test_bad_tactic_has_path(self):
        doc = {"id": "demo", "observations": [{"tactic": "sorcery", "technique": "T1059"}]}
        with pytest.raises(ValidationError) as excinfo:
            parse_case(json.dumps(doc))
        assert excinfo.value.path == "observations[0].tactic"

    def test_invalid_case_id(self):
        with pytest.raises(ValidationError):
            parse_case(json.dumps({"id": "../evil"}))

    def test_phase_override_parsing(self, whispergate):
        from atlas.killchain import KillChainPhase

        assert whispergate.phase_overrides == {
            Tactic.DISCOVERY: KillChainPhase.INSTALLATION
        }


class TestSerialize:
    def test_roundtrip_identity(self, whispergate, whispergate_bytes):
        assert parse_case(serialize_case(whispergate)) == whispergate
        assert serialize_case(whispergate) == whispergate_bytes.decode("utf-8")

    def test_serialize_twice_identical(self, whispergate):
        assert serialize_case(whispergate) == serialize_case(whispergate)

    def test_empty_thread_arrays_present(self):
        case = Case(id="empty")
        doc = json.loads(serialize_case(case))
        assert doc["thread"] == {"events": [], "arcs": []}

    def test_trailing_newline(self, whispergate):
        assert serialize_case(whispergate).endswith("}\n")

    def test_unsorted_input_normalizes(self):
        scrambled = Case(
            id="demo",
            observations=(
                Observation(Tactic.IMPACT, "T1485"),
                Observation(Tactic.EXECUTION, "T1059.003"),
            ),
        )
        doc = json.loads(serialize_case(scrambled))
        assert [o["technique"] for o in doc["observations"]] == ["T1059.003", "T1485"]


@pytest.fixture(scope="module")
def report(whispergate, corpus, defense_map, phase_map, action_map):
    return build_report(whispergate, corpus, defense_map, phase_map, action_map)


class TestReport:
    def test_coa_section_has_bootloader_authentication(self, report):
        assert "Bootloader Authentication" in report.coa_section

    def test_event_and_arc_counts(self, report):
        import re

        lines = report.thread_section.splitlines()
        event_rows = [l for l in lines if re.match(r"^\| \d+ \|", l)]
        arc_rows = [l for l in lines if re.match(r"^\| [A-F] \| \d+ \|", l)]
        assert len(event_rows) == 7
        assert len(arc_rows) == 6

    def test_unresolvable_adversary_downgrades_with_warning(self, report):
        assert "DEV-0586" in report.profile_section
        assert "Warning" in report.profile_section

    def test_resolvable_adversary_renders_profile(self, corpus, defense_map, phase_map, action_map):
        case = Case(id="apt28-case", title="APT28 watch", adversary_ref="Fancy Bear")
        report = build_report(case, corpus, defense_map, phase_map, action_map)
        assert "APT28" in report.profile_section
        assert "STRONTIUM" in report.profile_section

    def test_empty_case_all_sections_present(self, corpus, defense_map, phase_map, action_map):
        case = Case(id="blank")
        report = build_report(case, corpus, defense_map, phase_map, action_map)
        markdown = report.markdown()
        for heading in (
            "## Adversary profile",
            "## Observed techniques",
            "## Kill chain narrative",
            "## Activity thread",
            "## Course of action matrix",
        ):
            assert heading in markdown
        assert "(no events)" in markdown
        assert "(no adversary declared)" in markdown

    def test_report_deterministic(self, whispergate, corpus, defense_map, phase_map, action_map):
        first = build_report(whispergate, corpus, defense_map, phase_map, action_map)
        second = build_report(whispergate, corpus, defense_map, phase_map, action_map)
        assert first.markdown() == second.markdown()

    def test_every_observation_in_exactly_one_narrative_row(self, report, whispergate):
        rows = [
            line for line in report.narrative_section.splitlines() if line.startswith("| ")
        ][1:]  # skip header separator handled below
        rows = [r for r in rows if not set(r) <= {"|", "-", " "}]
        for obs in whispergate.observations:
            hits = [r for r in rows if f" {obs.technique}," in r or f" {obs.technique} " in r]
            assert len(hits) == 1, obs.technique

    def test_five_no_information_rows(self, report):
        assert report.ttp_section.count("no information") == 5
