"""Case documents: observations, overrides, the activity thread, and reporting.

A case file is one UTF-8 JSON document in canonical form (sorted keys, defined
list orders, trailing newline), so that serialize -> parse -> serialize is
byte-stable and diffs stay readable.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from .attack import Corpus, Tactic, is_subtechnique, validate_technique_id
from .coa import ActionMap, build_coa_matrix, render_coa
from .defense import DefenseMap
from .diamond import (
    ActivityThread,
    Combinator,
    Confidence,
    DiamondArc,
    DiamondEvent,
    EventStatus,
    phase_grid,
    validate_thread,
)
from .errors import FormatError, NotFoundError, ValidationError
from .killchain import KillChainPhase, PhaseMap, assign_phases, narrative
from .profiles import build_profile

CASE_ID_RE = re.compile(r"^[A-Za-z0-9][A-Za-z0-9._-]*$")

NO_INFORMATION = "no information"

#: tactic rows a report's technique table always shows, mirroring the layout
#: of advisory-style TTP tables (no recon / resource-development / collection
#: rows); observed tactics outside this set are added on top.
TTP_REPORT_TACTICS = (
    Tactic.INITIAL_ACCESS,
    Tactic.EXECUTION,
    Tactic.PERSISTENCE,
    Tactic.PRIVILEGE_ESCALATION,
    Tactic.DEFENSE_EVASION,
    Tactic.CREDENTIAL_ACCESS,
    Tactic.DISCOVERY,
    Tactic.LATERAL_MOVEMENT,
    Tactic.COMMAND_AND_CONTROL,
    Tactic.EXFILTRATION,
    Tactic.IMPACT,
)


@dataclass(frozen=True)
class Observation:
    tactic: Tactic
    technique: str
    description: str = ""
    source: str = ""


@dataclass(frozen=True)
class Case:
    id: str
    title: str = ""
    adversary_ref: str = ""
    observations: tuple[Observation, ...] = ()
    phase_overrides: dict[Tactic, KillChainPhase] = field(default_factory=dict)
    thread: ActivityThread = field(default_factory=ActivityThread)
    phase_prose: dict[KillChainPhase, str] = field(default_factory=dict)
    notes: str = ""

    def observation_pairs(self) -> list[tuple[Tactic, str]]:
        return [(o.tactic, o.technique) for o in self.observations]


def _parse_enum(enum_cls, raw, path):
    try:
        return enum_cls(raw)
    except ValueError:
        raise ValidationError(
            f"expected one of {[m.value for m in enum_cls]}, got {raw!r}", path=path
        ) from None


def _require(data: dict, key: str, kind, path: str):
    value = data.get(key)
    if not isinstance(value, kind):
        raise ValidationError(f"missing or mistyped field {key!r}", path=path)
    return value


def event_from_json(raw: dict, path: str = "event") -> DiamondEvent:
    event_id = _require(raw, "id", int, f"{path}.id")
    techniques = raw.get("techniques", [])
    if not isinstance(techniques, list):
        raise ValidationError("'techniques' must be an array", path=f"{path}.techniques")
    for i, tid in enumerate(techniques):
        try:
            validate_technique_id(tid)
        except ValueError as exc:
            raise ValidationError(str(exc), path=f"{path}.techniques[{i}]") from None
    return DiamondEvent(
        id=event_id,
        phase=_parse_enum(KillChainPhase, raw.get("phase"), f"{path}.phase"),
        adversary=raw.get("adversary", ""),
        capability=raw.get("capability", ""),
        infrastructure=raw.get("infrastructure", ""),
        victim=raw.get("victim", ""),
        status=_parse_enum(EventStatus, raw.get("status", "hypothesis"), f"{path}.status"),
        confidence=_parse_enum(Confidence, raw.get("confidence", "low"), f"{path}.confidence"),
        description=raw.get("description", ""),
        techniques=frozenset(techniques),
    )


def arc_from_json(raw: dict, path: str = "arc") -> DiamondArc:
    return DiamondArc(
        label=_require(raw, "label", str, f"{path}.label"),
        from_id=_require(raw, "from", int, f"{path}.from"),
        to_id=_require(raw, "to", int, f"{path}.to"),
        combinator=_parse_enum(Combinator, raw.get("combinator", "AND"), f"{path}.combinator"),
        status=_parse_enum(EventStatus, raw.get("status", "hypothesis"), f"{path}.status"),
        confidence=_parse_enum(Confidence, raw.get("confidence", "low"), f"{path}.confidence"),
        provides=raw.get("provides", ""),
    )


def parse_case(document: bytes | str) -> Case:
    """Parse and fully validate a case document, thread invariants included."""
    if isinstance(document, bytes):
        document = document.decode("utf-8")
    try:
        data = json.loads(document)
    except json.JSONDecodeError as exc:
        raise FormatError(f"case document is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise FormatError("top-level value is not an object")

    case_id = data.get("id")
    if not isinstance(case_id, str) or not CASE_ID_RE.match(case_id):
        raise ValidationError(f"invalid case id {case_id!r}", path="id")

    observations = []
    raw_observations = data.get("observations", [])
    if not isinstance(raw_observations, list):
        raise ValidationError("'observations' must be an array", path="observations")
    for i, raw in enumerate(raw_observations):
        path = f"observations[{i}]"
        if not isinstance(raw, dict):
            raise ValidationError("observation must be an object", path=path)
        try:
            technique = validate_technique_id(raw.get("technique", ""))
        except ValueError as exc:
            raise ValidationError(str(exc), path=f"{path}.technique") from None
        observations.append(
            Observation(
                tactic=_parse_enum(Tactic, raw.get("tactic"), f"{path}.tactic"),
                technique=technique,
                description=raw.get("description", ""),
                source=raw.get("source", ""),
            )
        )
    observations.sort(key=lambda o: (o.tactic.order, o.technique, o.description, o.source))

    phase_overrides = {}
    for key, raw in sorted(data.get("phase_overrides", {}).items()):
        tactic = _parse_enum(Tactic, key, f"phase_overrides.{key}")
        phase_overrides[tactic] = _parse_enum(KillChainPhase, raw, f"phase_overrides.{key}")

    phase_prose = {}
    for key, raw in sorted(data.get("phase_prose", {}).items()):
        phase = _parse_enum(KillChainPhase, key, f"phase_prose.{key}")
        if not isinstance(raw, str):
            raise ValidationError("prose must be a string", path=f"phase_prose.{key}")
        phase_prose[phase] = raw

    raw_thread = data.get("thread", {})
    if not isinstance(raw_thread, dict):
        raise ValidationError("'thread' must be an object", path="thread")
    events = tuple(
        sorted(
            (
                event_from_json(raw, f"thread.events[{i}]")
                for i, raw in enumerate(raw_thread.get("events", []))
            ),
            key=lambda e: e.id,
        )
    )
    arcs = tuple(
        sorted(
            (
                arc_from_json(raw, f"thread.arcs[{i}]")
                for i, raw in enumerate(raw_thread.get("arcs", []))
            ),
            key=lambda a: (a.label, a.from_id, a.to_id),
        )
    )
    thread = ActivityThread(events=events, arcs=arcs)
    violations = validate_thread(thread)
    if violations:
        raise ValidationError("; ".join(violations), path="thread")

    return Case(
        id=case_id,
        title=data.get("title", ""),
        adversary_ref=data.get("adversary_ref", ""),
        observations=tuple(observations),
        phase_overrides=phase_overrides,
        thread=thread,
        phase_prose=phase_prose,
        notes=data.get("notes", ""),
    )


def event_to_json(event: DiamondEvent) -> dict:
    return {
        "id": event.id,
        "phase": event.phase.value,
        "adversary": event.adversary,
        "capability": event.capability,
        "infrastructure": event.infrastructure,
        "victim": event.victim,
        "status": event.status.value,
        "confidence": event.confidence.value,
        "description": event.description,
        "techniques": sorted(event.techniques),
    }


def arc_to_json(arc: DiamondArc) -> dict:
    return {
        "label": arc.label,
        "from": arc.from_id,
        "to": arc.to_id,
        "combinator": arc.combinator.value,
        "status": arc.status.value,
        "confidence": arc.confidence.value,
        "provides": arc.provides,
    }


def serialize_case(case: Case) -> str:
    """Canonical textual form of a case (stable bytes for identical cases)."""
    data = {
        "id": case.id,
        "title": case.title,
        "adversary_ref": case.adversary_ref,
        "notes": case.notes,
        "observations": [
            {
                "tactic": o.tactic.value,
                "technique": o.technique,
                "description": o.description,
                "source": o.source,
            }
            for o in sorted(
                case.observations,
                key=lambda o: (o.tactic.order, o.technique, o.description, o.source),
            )
        ],
        "phase_overrides": {
            tactic.value: phase.value for tactic, phase in sorted(
                case.phase_overrides.items(), key=lambda kv: kv[0].value
            )
        },
        "phase_prose": {
            phase.value: text for phase, text in sorted(
                case.phase_prose.items(), key=lambda kv: kv[0].value
            )
        },
        "thread": {
            "events": [
                event_to_json(e) for e in sorted(case.thread.events, key=lambda e: e.id)
            ],
            "arcs": [
                arc_to_json(a)
                for a in sorted(case.thread.arcs, key=lambda a: (a.label, a.from_id, a.to_id))
            ],
        },
    }
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def thread_placements(thread: ActivityThread) -> list[tuple[KillChainPhase, str]]:
    """Phase-keyed technique placements contributed by the thread's events."""
    return [
        (event.phase, tid)
        for event in sorted(thread.events, key=lambda e: e.id)
        for tid in sorted(event.techniques)
    ]


def technique_display(corpus: Corpus, technique_id: str) -> str:
    """'T1059.003 Command and Scripting Interpreter: Windows Command Shell' style."""
    tech = corpus.techniques.get(technique_id)
    if tech is None:
        return technique_id
    name = tech.name
    if is_subtechnique(technique_id):
        parent = corpus.techniques.get(tech.parent_id or "")
        if parent is not None:
            name = f"{parent.name}: {name}"
    return f"{technique_id} {name}"


def _cell(text: str) -> str:
    return text.replace("|", "\\|").replace("\n", " ")


@dataclass(frozen=True)
class CaseReport:
    case_id: str
    title: str
    profile_section: str
    ttp_section: str
    narrative_section: str
    thread_section: str
    coa_section: str

    def markdown(self) -> str:
        return "\n".join(
            [
                f"# Case report: {self.title or self.case_id}",
                "",
                self.profile_section,
                self.ttp_section,
                self.narrative_section,
                self.thread_section,
                self.coa_section,
            ]
        )


def _profile_section(case: Case, corpus: Corpus) -> str:
    lines = ["## Adversary profile", ""]
    if not case.adversary_ref:
        lines.append("(no adversary declared)")
        lines.append("")
        return "\n".join(lines)
    try:
        profile = build_profile(corpus, case.adversary_ref)
    except NotFoundError:
        lines.append(f"**{case.adversary_ref}**")
        lines.append("")
        lines.append(
            "Warning: this adversary label is not present in the technique corpus; "
            "reported as a free-form label."
        )
        lines.append("")
        return "\n".join(lines)
    lines.append(f"**{profile.group.name}** ({profile.group.id})")
    lines.append("")
    if profile.description:
        lines.append(_cell(profile.description))
        lines.append("")
    lines.append("Aliases: " + ", ".join(profile.aliases))
    if profile.software:
        lines.append("Software: " + ", ".join(s.name for s in profile.software))
    lines.append("")
    return "\n".join(lines)


def _ttp_section(case: Case, corpus: Corpus) -> str:
    observed = {o.tactic for o in case.observations}
    rows = [t for t in TTP_REPORT_TACTICS]
    for tactic in Tactic:  # observed tactics outside the fixed row set still render
        if tactic in observed and tactic not in rows:
            rows.append(tactic)
    rows.sort(key=lambda t: t.order)

    lines = [
        "## Observed techniques",
        "",
        "| Tactic | Technique | Description |",
        "| --- | --- | --- |",
    ]
    for tactic in rows:
        tactic_rows = [o for o in case.observations if o.tactic == tactic]
        if not tactic_rows:
            lines.append(f"| {tactic.display} | {NO_INFORMATION} |  |")
            continue
        for obs in tactic_rows:
            lines.append(
                f"| {tactic.display} | {_cell(technique_display(corpus, obs.technique))} "
                f"| {_cell(obs.description)} |"
            )
    lines.append("")
    return "\n".join(lines)


def _narrative_section(case: Case, phase_map: PhaseMap) -> str:
    buckets = assign_phases(phase_map, case.observation_pairs())
    rows = narrative(buckets, case.phase_prose)
    lines = [
        "## Kill chain narrative",
        "",
        "| # | Phase | Techniques | Description |",
        "| --- | --- | --- | --- |",
    ]
    for i, row in enumerate(rows, start=1):
        techniques = ", ".join(row.techniques)
        lines.append(f"| {i} | {row.phase.display} | {techniques} | {_cell(row.prose)} |")
    lines.append("")
    return "\n".join(lines)


def _thread_section(case: Case) -> str:
    thread = case.thread
    lines = ["## Activity thread", ""]
    if not thread.events:
        lines.append("(no events)")
        lines.append("")
        return "\n".join(lines)

    grid = phase_grid(thread)
    lines.extend(["| Phase | Events |", "| --- | --- |"])
    for phase, events in grid.items():
        ids = ", ".join(str(e.id) for e in events)
        lines.append(f"| {phase.display} | {ids} |")
    lines.append("")

    lines.extend(
        [
            "| # | Phase | Status | Confidence | Adversary | Capability | Infrastructure | Victim | Techniques | Description |",
            "| --- | --- | --- | --- | --- | --- | --- | --- | --- | --- |",
        ]
    )
    for e in sorted(thread.events, key=lambda e: e.id):
        lines.append(
            "| "
            + " | ".join(
                [
                    str(e.id),
                    e.phase.display,
                    e.status.value,
                    e.confidence.value,
                    _cell(e.adversary),
                    _cell(e.capability),
                    _cell(e.infrastructure),
                    _cell(e.victim),
                    ", ".join(sorted(e.techniques)),
                    _cell(e.description),
                ]
            )
            + " |"
        )
    lines.append("")

    if thread.arcs:
        lines.extend(
            [
                "| Arc | From | To | Combinator | Status | Confidence | Provides |",
                "| --- | --- | --- | --- | --- | --- | --- |",
            ]
        )
        for a in sorted(thread.arcs, key=lambda a: (a.label, a.from_id, a.to_id)):
            lines.append(
                f"| {a.label} | {a.from_id} | {a.to_id} | {a.combinator.value} "
                f"| {a.status.value} | {a.confidence.value} | {_cell(a.provides)} |"
            )
        lines.append("")
    return "\n".join(lines)


def build_report(
    case: Case,
    corpus: Corpus,
    defense_map: DefenseMap,
    phase_map: PhaseMap,
    action_map: ActionMap,
) -> CaseReport:
    """Assemble the full analyst report; deterministic for identical inputs."""
    effective = phase_map.with_overrides(case.phase_overrides)
    matrix = build_coa_matrix(
        case.observation_pairs(),
        effective,
        defense_map,
        action_map,
        extra_placements=thread_placements(case.thread),
    )
    coa_section = "## Course of action matrix\n\n" + render_coa(matrix, "markdown")
    return CaseReport(
        case_id=case.id,
        title=case.title,
        profile_section=_profile_section(case, corpus),
        ttp_section=_ttp_section(case, corpus),
        narrative_section=_narrative_section(case, effective),
        thread_section=_thread_section(case),
        coa_section=coa_section,
    )
