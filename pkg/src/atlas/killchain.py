"""Lockheed Martin kill chain phases and the tactic-to-phase assignment."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping

from .attack import Tactic, _display_name
from .errors import ValidationError

#: placeholder prose for phases with nothing reported
NO_OBSERVATIONS = "no observations"


class KillChainPhase(Enum):
    """Seven intrusion phases with a fixed total order."""

    RECONNAISSANCE = "reconnaissance"
    WEAPONIZATION = "weaponization"
    DELIVERY = "delivery"
    EXPLOITATION = "exploitation"
    INSTALLATION = "installation"
    COMMAND_AND_CONTROL = "command-and-control"
    ACTIONS_ON_OBJECTIVES = "actions-on-objectives"

    @property
    def order(self) -> int:
        return _PHASE_ORDER[self]

    @property
    def display(self) -> str:
        return _display_name(self.value)


_PHASE_ORDER = {phase: i for i, phase in enumerate(KillChainPhase)}


def phase_from_name(name: str) -> KillChainPhase:
    key = name.strip().lower().replace(" ", "-")
    try:
        return KillChainPhase(key)
    except ValueError:
        raise ValidationError(f"unknown kill chain phase {name!r}") from None


_DEFAULT_ASSIGNMENT = {
    Tactic.RECONNAISSANCE: KillChainPhase.RECONNAISSANCE,
    Tactic.RESOURCE_DEVELOPMENT: KillChainPhase.WEAPONIZATION,
    Tactic.INITIAL_ACCESS: KillChainPhase.DELIVERY,
    Tactic.EXECUTION: KillChainPhase.EXPLOITATION,
    Tactic.PERSISTENCE: KillChainPhase.INSTALLATION,
    Tactic.PRIVILEGE_ESCALATION: KillChainPhase.INSTALLATION,
    Tactic.DEFENSE_EVASION: KillChainPhase.INSTALLATION,
    Tactic.CREDENTIAL_ACCESS: KillChainPhase.ACTIONS_ON_OBJECTIVES,
    Tactic.DISCOVERY: KillChainPhase.ACTIONS_ON_OBJECTIVES,
    Tactic.LATERAL_MOVEMENT: KillChainPhase.ACTIONS_ON_OBJECTIVES,
    Tactic.COLLECTION: KillChainPhase.ACTIONS_ON_OBJECTIVES,
    Tactic.COMMAND_AND_CONTROL: KillChainPhase.COMMAND_AND_CONTROL,
    Tactic.EXFILTRATION: KillChainPhase.ACTIONS_ON_OBJECTIVES,
    Tactic.IMPACT: KillChainPhase.ACTIONS_ON_OBJECTIVES,
}


@dataclass(frozen=True)
class PhaseMap:
    """Total mapping of every ATT&CK tactic to one kill chain phase."""

    assignment: Mapping[Tactic, KillChainPhase]

    def __post_init__(self):
        missing = [t.value for t in Tactic if t not in self.assignment]
        if missing:
            raise ValidationError(f"phase map is missing tactics: {', '.join(missing)}")

    @classmethod
    def default(cls) -> "PhaseMap":
        return cls(dict(_DEFAULT_ASSIGNMENT))

    def with_overrides(self, overrides: Mapping[Tactic, KillChainPhase]) -> "PhaseMap":
        merged = dict(self.assignment)
        merged.update(overrides)
        return PhaseMap(merged)


def phase_for_tactic(phase_map: PhaseMap, tactic: Tactic) -> KillChainPhase:
    return phase_map.assignment[tactic]


def assign_phases(
    phase_map: PhaseMap, observations: Iterable[tuple[Tactic, str]]
) -> dict[KillChainPhase, list[str]]:
    """Bucket observed (tactic, technique) pairs by phase.

    Every phase is present in the result; technique ids are unique and sorted
    within a bucket.
    """
    buckets: dict[KillChainPhase, set[str]] = {phase: set() for phase in KillChainPhase}
    for tactic, technique_id in observations:
        buckets[phase_for_tactic(phase_map, tactic)].add(technique_id)
    return {phase: sorted(ids) for phase, ids in buckets.items()}


@dataclass(frozen=True)
class NarrativeRow:
    phase: KillChainPhase
    prose: str
    techniques: tuple[str, ...]


def narrative(
    buckets: Mapping[KillChainPhase, list[str]],
    prose: Mapping[KillChainPhase, str] | None = None,
) -> list[NarrativeRow]:
    """Seven rows in phase order; phases without prose carry the placeholder."""
    prose = prose or {}
    return [
        NarrativeRow(
            phase=phase,
            prose=prose.get(phase, NO_OBSERVATIONS),
            techniques=tuple(buckets.get(phase, [])),
        )
        for phase in KillChainPhase
    ]
