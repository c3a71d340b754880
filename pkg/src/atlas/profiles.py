"""Adversary profiles, tactic/technique tables, Navigator layers, scenario flows."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .attack import (
    Corpus,
    Group,
    Software,
    Tactic,
    resolve_group,
    software_for_group,
    techniques_for_group,
)
from .errors import FormatError, ValidationError

LAYER_FORMAT_VERSION = "4.4"
NAVIGATOR_VERSION = "4.8.0"
ATTACK_VERSION = "11"
LAYER_DOMAIN = "enterprise-attack"
DEFAULT_HIGHLIGHT_COLOR = "#ff6666"


@dataclass(frozen=True)
class AdversaryProfile:
    group: Group
    description: str
    aliases: tuple[str, ...]
    # canonical tactic order; each value is sorted (technique id, name) pairs
    ttp: dict[Tactic, tuple[tuple[str, str], ...]]
    software: tuple[Software, ...]


def build_profile(
    corpus: Corpus, group_name: str, include_software_derived: bool = False
) -> AdversaryProfile:
    """Assemble a group's identity, tactic/technique table and software list."""
    group = resolve_group(corpus, group_name)
    used = techniques_for_group(corpus, group, include_software_derived)
    table: dict[Tactic, list[tuple[str, str]]] = {}
    for tid in sorted(used):
        tech = corpus.techniques[tid]
        for tactic in tech.tactics:
            table.setdefault(tactic, []).append((tid, tech.name))
    ttp = {
        tactic: tuple(sorted(table[tactic]))
        for tactic in Tactic
        if tactic in table
    }
    return AdversaryProfile(
        group=group,
        description=group.description,
        aliases=tuple(sorted(group.aliases, key=str.casefold)),
        ttp=ttp,
        software=tuple(software_for_group(corpus, group)),
    )


def ttp_table(profile: AdversaryProfile) -> list[tuple[Tactic, list[str]]]:
    """Non-empty tactics in canonical order, technique ids sorted within each."""
    return [(tactic, [tid for tid, _ in pairs]) for tactic, pairs in profile.ttp.items()]


def technique_pairs(profile: AdversaryProfile) -> set[tuple[Tactic, str]]:
    return {(tactic, tid) for tactic, pairs in profile.ttp.items() for tid, _ in pairs}


@dataclass(frozen=True)
class LayerEntry:
    technique_id: str
    tactic: Tactic
    score: int = 1
    color: str = DEFAULT_HIGHLIGHT_COLOR
    comment: str = ""


@dataclass(frozen=True)
class NavigatorLayer:
    name: str
    entries: tuple[LayerEntry, ...]
    description: str = ""
    domain: str = LAYER_DOMAIN
    color: str = DEFAULT_HIGHLIGHT_COLOR


def export_navigator_layer(
    profile: AdversaryProfile, color: str = DEFAULT_HIGHLIGHT_COLOR
) -> NavigatorLayer:
    """One highlighted cell per (tactic, technique) pair of the profile."""
    entries = [
        LayerEntry(technique_id=tid, tactic=tactic, score=1, color=color)
        for tactic, pairs in profile.ttp.items()
        for tid, _ in pairs
    ]
    entries.sort(key=lambda e: (e.tactic.order, e.technique_id))
    return NavigatorLayer(
        name=profile.group.name,
        entries=tuple(entries),
        description=f"Techniques used by {profile.group.name}",
        color=color,
    )


def layer_to_json(layer: NavigatorLayer) -> str:
    """Navigator-loadable layer document (layer format 4.4)."""
    data = {
        "name": layer.name,
        "versions": {
            "attack": ATTACK_VERSION,
            "navigator": NAVIGATOR_VERSION,
            "layer": LAYER_FORMAT_VERSION,
        },
        "domain": layer.domain,
        "description": layer.description,
        "filters": {"platforms": ["Linux", "macOS", "Windows"]},
        "sorting": 0,
        "hideDisabled": False,
        "techniques": [
            {
                "techniqueID": e.technique_id,
                "tactic": e.tactic.value,
                "score": e.score,
                "color": e.color,
                "comment": e.comment,
                "enabled": True,
            }
            for e in layer.entries
        ],
        "gradient": {"colors": ["#ffffff", layer.color], "minValue": 0, "maxValue": 1},
        "legendItems": [],
        "metadata": [],
        "showTacticRowBackground": False,
        "tacticRowBackground": "#dddddd",
        "selectTechniquesAcrossTactics": False,
        "selectSubtechniquesWithParent": False,
    }
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def layer_from_json(document: bytes | str) -> NavigatorLayer:
    if isinstance(document, bytes):
        document = document.decode("utf-8")
    try:
        data = json.loads(document)
    except json.JSONDecodeError as exc:
        raise FormatError(f"layer is not valid JSON: {exc}") from exc
    if not isinstance(data, dict) or "techniques" not in data:
        raise FormatError("layer document has no 'techniques' array")
    entries = []
    for i, raw in enumerate(data["techniques"]):
        try:
            tactic = Tactic(raw.get("tactic"))
        except ValueError:
            raise ValidationError(
                f"unknown tactic {raw.get('tactic')!r}", path=f"techniques[{i}]"
            ) from None
        entries.append(
            LayerEntry(
                technique_id=raw.get("techniqueID", ""),
                tactic=tactic,
                score=raw.get("score", 1),
                color=raw.get("color", DEFAULT_HIGHLIGHT_COLOR),
                comment=raw.get("comment", ""),
            )
        )
    entries.sort(key=lambda e: (e.tactic.order, e.technique_id))
    return NavigatorLayer(
        name=data.get("name", ""),
        entries=tuple(entries),
        description=data.get("description", ""),
        domain=data.get("domain", LAYER_DOMAIN),
    )


@dataclass(frozen=True)
class ScenarioStep:
    number: int
    tactic: Tactic
    technique_id: str
    narrative: str


@dataclass(frozen=True)
class ScenarioFlow:
    title: str
    steps: tuple[ScenarioStep, ...] = field(default_factory=tuple)


def build_scenario_flow(
    profile: AdversaryProfile,
    steps: list[tuple[Tactic, str, str]],
    title: str = "",
) -> ScenarioFlow:
    """Number and validate an analyst-authored attack scenario.

    Every step's technique must appear in the profile; orderings are authored,
    never inferred.
    """
    if not steps:
        raise ValidationError("scenario has no steps")
    known = {tid for pairs in profile.ttp.values() for tid, _ in pairs}
    numbered = []
    for i, (tactic, technique_id, text) in enumerate(steps, start=1):
        if technique_id not in known:
            raise ValidationError(
                f"technique {technique_id} is not in the {profile.group.name} profile",
                path=f"steps[{i - 1}]",
            )
        numbered.append(
            ScenarioStep(number=i, tactic=tactic, technique_id=technique_id, narrative=text)
        )
    return ScenarioFlow(title=title or f"{profile.group.name} scenario", steps=tuple(numbered))
