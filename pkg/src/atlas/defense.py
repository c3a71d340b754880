"""Defensive knowledge: countermeasure catalog and offense-to-defense mappings.

The map is a curated flat file linking offensive technique ids to defensive
techniques through the digital artifact both sides touch. Lookup falls back
from a sub-technique to its parent when the sub-technique has no direct row.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from enum import Enum

from .attack import Corpus, Tactic, parent_technique, validate_technique_id
from .errors import DuplicateIdError, FormatError, NotFoundError, ValidationError

DEFENSIVE_ID_RE = re.compile(r"^D3-[A-Z]+$")


class DefensiveTactic(Enum):
    MODEL = "model"
    HARDEN = "harden"
    DETECT = "detect"
    ISOLATE = "isolate"
    DECEIVE = "deceive"
    EVICT = "evict"
    RESTORE = "restore"

    @property
    def display(self) -> str:
        return self.value.capitalize()


@dataclass(frozen=True)
class DefensiveTechnique:
    id: str
    name: str
    tactic: DefensiveTactic
    description: str = ""


@dataclass(frozen=True)
class DefenseMapping:
    offensive: str  # technique id
    artifact: str
    defensive: str  # defensive technique id


@dataclass(frozen=True)
class DefenseMap:
    techniques: dict[str, DefensiveTechnique]
    artifacts: tuple[str, ...]
    mappings: tuple[DefenseMapping, ...]
    by_offense: dict[str, tuple[DefenseMapping, ...]]
    by_defense: dict[str, tuple[DefenseMapping, ...]]


def _index(mappings, key) -> dict[str, tuple[DefenseMapping, ...]]:
    out: dict[str, list[DefenseMapping]] = {}
    for m in mappings:
        out.setdefault(key(m), []).append(m)
    return {k: tuple(v) for k, v in sorted(out.items())}


def parse_defense_map(document: bytes | str) -> DefenseMap:
    """Parse the defense-map JSON file and build both lookup indexes."""
    if isinstance(document, bytes):
        document = document.decode("utf-8")
    try:
        data = json.loads(document)
    except json.JSONDecodeError as exc:
        raise FormatError(f"document is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise FormatError("top-level value is not an object")

    techniques: dict[str, DefensiveTechnique] = {}
    for i, raw in enumerate(data.get("defensive_techniques", [])):
        path = f"defensive_techniques[{i}]"
        def_id = raw.get("id", "")
        if not DEFENSIVE_ID_RE.match(def_id):
            raise ValidationError(f"malformed defensive id {def_id!r}", path=path)
        if def_id in techniques:
            raise DuplicateIdError(f"duplicate defensive-technique id {def_id}")
        if not raw.get("name"):
            raise ValidationError("defensive technique has no name", path=path)
        try:
            tactic = DefensiveTactic(raw.get("tactic", ""))
        except ValueError:
            raise ValidationError(
                f"unknown defensive tactic {raw.get('tactic')!r}", path=path
            ) from None
        techniques[def_id] = DefensiveTechnique(
            id=def_id,
            name=raw["name"],
            tactic=tactic,
            description=raw.get("description", ""),
        )

    artifacts: list[str] = []
    for i, raw in enumerate(data.get("artifacts", [])):
        name = raw.get("name", "")
        if not name:
            raise ValidationError("artifact has no name", path=f"artifacts[{i}]")
        if name in artifacts:
            raise DuplicateIdError(f"duplicate artifact {name!r}")
        artifacts.append(name)

    mappings: list[DefenseMapping] = []
    for i, raw in enumerate(data.get("mappings", [])):
        path = f"mappings[{i}]"
        try:
            offensive = validate_technique_id(raw.get("offensive", ""))
        except ValueError as exc:
            raise ValidationError(str(exc), path=path) from None
        if raw.get("defensive") not in techniques:
            raise ValidationError(
                f"mapping references undeclared defensive technique {raw.get('defensive')!r}",
                path=path,
            )
        if raw.get("artifact") not in artifacts:
            raise ValidationError(
                f"mapping references undeclared artifact {raw.get('artifact')!r}", path=path
            )
        mappings.append(
            DefenseMapping(offensive=offensive, artifact=raw["artifact"], defensive=raw["defensive"])
        )
    mappings.sort(key=lambda m: (m.offensive, m.defensive, m.artifact))

    return DefenseMap(
        techniques=techniques,
        artifacts=tuple(sorted(artifacts)),
        mappings=tuple(mappings),
        by_offense=_index(mappings, lambda m: m.offensive),
        by_defense=_index(mappings, lambda m: m.defensive),
    )


def serialize_defense_map(defense_map: DefenseMap) -> str:
    """Canonical JSON form: sorted ids, sorted keys, trailing newline."""
    data = {
        "defensive_techniques": [
            {
                "id": t.id,
                "name": t.name,
                "tactic": t.tactic.value,
                "description": t.description,
            }
            for t in sorted(defense_map.techniques.values(), key=lambda t: t.id)
        ],
        "artifacts": [{"name": a} for a in defense_map.artifacts],
        "mappings": [
            {"offensive": m.offensive, "artifact": m.artifact, "defensive": m.defensive}
            for m in defense_map.mappings
        ],
    }
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def countermeasures_for(
    defense_map: DefenseMap, technique_id: str
) -> list[tuple[DefensiveTechnique, str]]:
    """All (defensive technique, artifact) pairs mapped from a technique.

    A sub-technique with no direct mapping inherits its parent's rows.
    """
    validate_technique_id(technique_id)
    rows = defense_map.by_offense.get(technique_id)
    if not rows:
        parent = parent_technique(technique_id)
        if parent:
            rows = defense_map.by_offense.get(parent)
    if not rows:
        return []
    pairs = [(defense_map.techniques[m.defensive], m.artifact) for m in rows]
    return sorted(pairs, key=lambda p: (p[0].id, p[1]))


def related_offensive_techniques(
    defense_map: DefenseMap, defensive_id: str, corpus: Corpus
) -> dict[Tactic, set[str]]:
    """Transpose view: offensive techniques countered by one defensive technique,
    grouped by every ATT&CK tactic they belong to (per the corpus)."""
    if defensive_id not in defense_map.techniques:
        raise NotFoundError(f"no defensive technique {defensive_id}")
    table: dict[Tactic, set[str]] = {}
    for m in defense_map.by_defense.get(defensive_id, ()):
        tech = corpus.techniques.get(m.offensive)
        if tech is None:
            continue
        for tactic in tech.tactics:
            table.setdefault(tactic, set()).add(tech.id)
    return dict(sorted(table.items(), key=lambda kv: kv[0].order))
