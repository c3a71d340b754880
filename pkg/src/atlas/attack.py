"""ATT&CK knowledge base: STIX 2.1 bundle parsing and group/technique queries.

The corpus is an immutable snapshot of an enterprise ATT&CK extract. Objects
keep their ATT&CK ids (T1105, G0007, S0502); STIX ids are only used while
resolving relationship endpoints during parsing.
"""

from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum

from .errors import (
    AmbiguousNameError,
    DuplicateIdError,
    FormatError,
    NotFoundError,
)

TECHNIQUE_ID_RE = re.compile(r"^T\d{4}(?:\.\d{3})?$")

#: relationship kinds retained by the parser
RELATION_KINDS = ("uses", "revoked-by", "subtechnique-of")


class Tactic(Enum):
    """The 14 enterprise ATT&CK tactics in canonical matrix order."""

    RECONNAISSANCE = "reconnaissance"
    RESOURCE_DEVELOPMENT = "resource-development"
    INITIAL_ACCESS = "initial-access"
    EXECUTION = "execution"
    PERSISTENCE = "persistence"
    PRIVILEGE_ESCALATION = "privilege-escalation"
    DEFENSE_EVASION = "defense-evasion"
    CREDENTIAL_ACCESS = "credential-access"
    DISCOVERY = "discovery"
    LATERAL_MOVEMENT = "lateral-movement"
    COLLECTION = "collection"
    COMMAND_AND_CONTROL = "command-and-control"
    EXFILTRATION = "exfiltration"
    IMPACT = "impact"

    @property
    def order(self) -> int:
        return _TACTIC_ORDER[self]

    @property
    def display(self) -> str:
        return _display_name(self.value)


_TACTIC_ORDER = {tactic: i for i, tactic in enumerate(Tactic)}

_LOWERCASE_WORDS = {"and", "on", "or", "of"}


def _display_name(shorthand: str) -> str:
    words = shorthand.split("-")
    return " ".join(
        w if i and w in _LOWERCASE_WORDS else w.capitalize() for i, w in enumerate(words)
    )


def tactic_from_name(name: str) -> Tactic:
    """Accept either the shorthand ('initial-access') or the display name."""
    key = name.strip().lower().replace(" ", "-")
    try:
        return Tactic(key)
    except ValueError:
        raise NotFoundError(f"unknown tactic {name!r}") from None


def validate_technique_id(value: str) -> str:
    if not isinstance(value, str) or not TECHNIQUE_ID_RE.match(value):
        raise ValueError(f"malformed technique id {value!r}")
    return value


def is_subtechnique(technique_id: str) -> bool:
    return "." in technique_id


def parent_technique(technique_id: str) -> str | None:
    """Parent id of a sub-technique, or None for a base technique."""
    if is_subtechnique(technique_id):
        return technique_id.split(".", 1)[0]
    return None


@dataclass(frozen=True)
class Technique:
    id: str
    name: str
    tactics: frozenset[Tactic]
    revoked: bool = False
    deprecated: bool = False

    @property
    def is_subtechnique(self) -> bool:
        return is_subtechnique(self.id)

    @property
    def parent_id(self) -> str | None:
        return parent_technique(self.id)


@dataclass(frozen=True)
class Group:
    id: str
    name: str
    aliases: frozenset[str]
    description: str = ""


@dataclass(frozen=True)
class Software:
    id: str
    name: str
    kind: str  # "malware" or "tool"


@dataclass(frozen=True)
class Relationship:
    source_id: str
    relation: str
    target_id: str


@dataclass(frozen=True)
class CorpusMeta:
    bundle_id: str
    object_count: int
    skipped: dict[str, int] = field(default_factory=dict)


@dataclass(frozen=True)
class Corpus:
    """Indexed, read-only view of a parsed bundle. Safe to share across threads."""

    techniques: dict[str, Technique]
    groups: dict[str, Group]
    software: dict[str, Software]
    relationships: tuple[Relationship, ...]
    alias_index: dict[str, tuple[str, ...]]  # casefolded alias -> group ids
    meta: CorpusMeta

    def sorted_ids(self) -> list[str]:
        return sorted([*self.techniques, *self.groups, *self.software])


def _external_id(obj: dict) -> str | None:
    for ref in obj.get("external_references", ()):
        if isinstance(ref, dict) and ref.get("source_name") == "mitre-attack":
            return ref.get("external_id")
    return None


def _tactics_of(obj: dict) -> frozenset[Tactic]:
    found = set()
    for phase in obj.get("kill_chain_phases", ()):
        if not isinstance(phase, dict) or phase.get("kill_chain_name") != "mitre-attack":
            continue
        try:
            found.add(Tactic(phase.get("phase_name")))
        except ValueError:
            continue  # non-enterprise phase names are ignored
    return frozenset(found)


def parse_stix_bundle(document: bytes | str) -> Corpus:
    """Parse a STIX 2.1 enterprise ATT&CK bundle into a Corpus.

    Keeps attack-pattern, intrusion-set, malware and tool objects plus the
    uses / revoked-by / subtechnique-of relationships among them. Anything
    else is skipped and counted in the corpus metadata.
    """
    if isinstance(document, bytes):
        document = document.decode("utf-8")
    try:
        data = json.loads(document)
    except json.JSONDecodeError as exc:
        raise FormatError(f"document is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise FormatError("top-level value is not an object")
    top_type = data.get("type")
    if top_type != "bundle":
        raise FormatError(f"top-level type is {top_type!r}, expected 'bundle'")

    objects = data.get("objects", [])
    if not isinstance(objects, list):
        raise FormatError("bundle 'objects' is not an array")

    techniques: dict[str, Technique] = {}
    groups: dict[str, Group] = {}
    software: dict[str, Software] = {}
    by_stix_id: dict[str, str] = {}  # stix id -> attack id
    raw_relationships: list[dict] = []
    skipped: Counter[str] = Counter()
    seen_stix_ids: set[str] = set()

    for index, obj in enumerate(objects):
        if not isinstance(obj, dict) or not obj.get("type") or not obj.get("id"):
            label = obj.get("id") if isinstance(obj, dict) else None
            raise FormatError(
                f"object {label or f'#{index}'} is missing a mandatory 'id' or 'type'"
            )
        stix_id = obj["id"]
        if stix_id in seen_stix_ids:
            raise DuplicateIdError(f"duplicate object id {stix_id}")
        seen_stix_ids.add(stix_id)
        obj_type = obj["type"]

        if obj_type == "relationship":
            raw_relationships.append(obj)
            continue
        if obj_type not in ("attack-pattern", "intrusion-set", "malware", "tool"):
            skipped[obj_type] += 1
            continue

        attack_id = _external_id(obj)
        if not attack_id:
            raise FormatError(f"object {stix_id} has no mitre-attack external id")
        name = obj.get("name", "")

        if obj_type == "attack-pattern":
            validate_technique_id(attack_id)
            tactics = _tactics_of(obj)
            if not tactics:
                raise FormatError(f"technique {attack_id} ({stix_id}) has no enterprise tactic")
            if attack_id in techniques:
                raise DuplicateIdError(f"duplicate technique id {attack_id}")
            techniques[attack_id] = Technique(
                id=attack_id,
                name=name,
                tactics=tactics,
                revoked=bool(obj.get("revoked", False)),
                deprecated=bool(obj.get("x_mitre_deprecated", False)),
            )
        elif obj_type == "intrusion-set":
            if attack_id in groups:
                raise DuplicateIdError(f"duplicate group id {attack_id}")
            aliases = frozenset({name, *obj.get("aliases", ())})
            groups[attack_id] = Group(
                id=attack_id,
                name=name,
                aliases=aliases,
                description=obj.get("description", ""),
            )
        else:  # malware / tool
            if attack_id in software:
                raise DuplicateIdError(f"duplicate software id {attack_id}")
            software[attack_id] = Software(id=attack_id, name=name, kind=obj_type)
        by_stix_id[stix_id] = attack_id

    relationships = []
    for obj in raw_relationships:
        relation = obj.get("relationship_type")
        source = by_stix_id.get(obj.get("source_ref", ""))
        target = by_stix_id.get(obj.get("target_ref", ""))
        if relation not in RELATION_KINDS or source is None or target is None:
            skipped["relationship"] += 1
            continue
        relationships.append(Relationship(source_id=source, relation=relation, target_id=target))
    relationships.sort(key=lambda r: (r.source_id, r.relation, r.target_id))

    alias_map: dict[str, set[str]] = {}
    for group in groups.values():
        for alias in group.aliases:
            alias_map.setdefault(alias.casefold(), set()).add(group.id)
    alias_index = {alias: tuple(sorted(ids)) for alias, ids in sorted(alias_map.items())}

    return Corpus(
        techniques=techniques,
        groups=groups,
        software=software,
        relationships=tuple(relationships),
        alias_index=alias_index,
        meta=CorpusMeta(
            bundle_id=data.get("id", ""),
            object_count=len(objects),
            skipped=dict(skipped),
        ),
    )


def resolve_group(corpus: Corpus, name: str) -> Group:
    """Find the unique group whose name or alias matches case-insensitively."""
    ids = corpus.alias_index.get(name.casefold(), ())
    if not ids:
        raise NotFoundError(f"no group named {name!r}")
    if len(ids) > 1:
        raise AmbiguousNameError(f"{name!r} matches groups {', '.join(ids)}")
    return corpus.groups[ids[0]]


def _usable(corpus: Corpus, technique_id: str) -> bool:
    tech = corpus.techniques.get(technique_id)
    return tech is not None and not tech.revoked and not tech.deprecated


def techniques_for_group(
    corpus: Corpus, group: Group, include_software_derived: bool = False
) -> set[str]:
    """Technique ids the group uses; optionally also via the software it uses.

    Revoked and deprecated techniques are excluded.
    """
    used: set[str] = set()
    used_software: set[str] = set()
    for rel in corpus.relationships:
        if rel.relation != "uses" or rel.source_id != group.id:
            continue
        if rel.target_id in corpus.techniques:
            used.add(rel.target_id)
        elif rel.target_id in corpus.software:
            used_software.add(rel.target_id)
    if include_software_derived and used_software:
        for rel in corpus.relationships:
            if (
                rel.relation == "uses"
                and rel.source_id in used_software
                and rel.target_id in corpus.techniques
            ):
                used.add(rel.target_id)
    return {tid for tid in used if _usable(corpus, tid)}


def software_for_group(corpus: Corpus, group: Group) -> list[Software]:
    """Software connected to the group by uses relationships, sorted by name."""
    found = [
        corpus.software[rel.target_id]
        for rel in corpus.relationships
        if rel.relation == "uses"
        and rel.source_id == group.id
        and rel.target_id in corpus.software
    ]
    return sorted(found, key=lambda s: (s.name.casefold(), s.id))


def technique_lookup(corpus: Corpus, technique_id: str) -> Technique:
    validate_technique_id(technique_id)
    tech = corpus.techniques.get(technique_id)
    if tech is None:
        raise NotFoundError(f"no technique {technique_id}")
    return tech
