"""Course-of-action matrix: kill chain phase x defensive action grid."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable

from .attack import Tactic
from .defense import DefenseMap, DefensiveTactic, DefensiveTechnique, countermeasures_for
from .errors import ValidationError
from .killchain import KillChainPhase, PhaseMap, phase_for_tactic


class CoaAction(Enum):
    DETECT = "detect"
    DENY = "deny"
    DISRUPT = "disrupt"
    DEGRADE = "degrade"
    DECEIVE = "deceive"
    DESTROY = "destroy"

    @property
    def display(self) -> str:
        return self.value.capitalize()


_DEFAULT_ACTIONS = {
    DefensiveTactic.DETECT: CoaAction.DETECT,
    DefensiveTactic.HARDEN: CoaAction.DENY,
    DefensiveTactic.ISOLATE: CoaAction.DISRUPT,
    DefensiveTactic.DECEIVE: CoaAction.DECEIVE,
    DefensiveTactic.EVICT: CoaAction.DESTROY,
    DefensiveTactic.RESTORE: CoaAction.DEGRADE,
    DefensiveTactic.MODEL: CoaAction.DETECT,
}


@dataclass(frozen=True)
class ActionMap:
    """Total defensive-tactic to action mapping plus per-countermeasure overrides."""

    by_tactic: dict[DefensiveTactic, CoaAction]
    overrides: dict[str, CoaAction] = field(default_factory=dict)

    def __post_init__(self):
        missing = [t.value for t in DefensiveTactic if t not in self.by_tactic]
        if missing:
            raise ValidationError(f"action map is missing tactics: {', '.join(missing)}")

    @classmethod
    def default(cls) -> "ActionMap":
        return cls(dict(_DEFAULT_ACTIONS))


def action_for(action_map: ActionMap, countermeasure: DefensiveTechnique) -> CoaAction:
    override = action_map.overrides.get(countermeasure.id)
    return override if override is not None else action_map.by_tactic[countermeasure.tactic]


@dataclass(frozen=True)
class CoaEntry:
    name: str
    provenance: tuple[str, ...]  # originating technique ids, sorted


@dataclass(frozen=True)
class CoaMatrix:
    # every (phase, action) cell present; entries sorted by name
    grid: dict[tuple[KillChainPhase, CoaAction], tuple[CoaEntry, ...]]

    def cell(self, phase: KillChainPhase, action: CoaAction) -> tuple[CoaEntry, ...]:
        return self.grid[(phase, action)]

    def filled_cells(self) -> dict[tuple[KillChainPhase, CoaAction], tuple[CoaEntry, ...]]:
        return {key: entries for key, entries in self.grid.items() if entries}


def build_coa_matrix(
    observations: Iterable[tuple[Tactic, str]],
    phase_map: PhaseMap,
    defense_map: DefenseMap,
    action_map: ActionMap,
    extra_placements: Iterable[tuple[KillChainPhase, str]] = (),
) -> CoaMatrix:
    """Place every applicable countermeasure into its (phase, action) cell.

    Observations are phase-assigned through the phase map; extra_placements
    carry techniques that already come with a phase (e.g. from an activity
    thread's events). Duplicate countermeasure names within a cell merge, and
    every entry keeps the technique ids it came from.
    """
    placements = [
        (phase_for_tactic(phase_map, tactic), technique_id)
        for tactic, technique_id in observations
    ]
    placements.extend(extra_placements)

    cells: dict[tuple[KillChainPhase, CoaAction], dict[str, set[str]]] = {}
    for phase, technique_id in placements:
        for countermeasure, _artifact in countermeasures_for(defense_map, technique_id):
            key = (phase, action_for(action_map, countermeasure))
            cells.setdefault(key, {}).setdefault(countermeasure.name, set()).add(technique_id)

    grid = {}
    for phase in KillChainPhase:
        for action in CoaAction:
            entries = cells.get((phase, action), {})
            grid[(phase, action)] = tuple(
                CoaEntry(name=name, provenance=tuple(sorted(entries[name])))
                for name in sorted(entries)
            )
    return CoaMatrix(grid=grid)


def coa_to_json(matrix: CoaMatrix) -> dict:
    """Grid as plain data: phase/action axes plus the filled cells."""
    cells = []
    for (phase, action), entries in matrix.grid.items():
        if not entries:
            continue
        cells.append(
            {
                "phase": phase.value,
                "action": action.value,
                "entries": [{"name": e.name, "provenance": list(e.provenance)} for e in entries],
            }
        )
    return {
        "phases": [p.value for p in KillChainPhase],
        "actions": [a.value for a in CoaAction],
        "cells": cells,
    }


def render_coa(matrix: CoaMatrix, format: str = "markdown") -> str:
    """Render the 7x6 grid; markdown carries provenance as footnotes."""
    if format == "markdown":
        return _render_markdown(matrix)
    if format == "csv":
        return _render_csv(matrix)
    raise ValidationError(f"unknown render format {format!r}")


def _render_markdown(matrix: CoaMatrix) -> str:
    footnotes: list[str] = []
    lines = [
        "| Phase | " + " | ".join(a.display for a in CoaAction) + " |",
        "| --- |" + " --- |" * len(CoaAction),
    ]
    for phase in KillChainPhase:
        row = [phase.display]
        for action in CoaAction:
            parts = []
            for entry in matrix.cell(phase, action):
                footnotes.append(
                    f"[^{len(footnotes) + 1}]: {entry.name} <- {', '.join(entry.provenance)}"
                )
                parts.append(f"{entry.name}[^{len(footnotes)}]")
            row.append("<br>".join(parts))
        lines.append("| " + " | ".join(row) + " |")
    if footnotes:
        lines.append("")
        lines.extend(footnotes)
    return "\n".join(lines) + "\n"


def _render_csv(matrix: CoaMatrix) -> str:
    out = io.StringIO()
    writer = csv.writer(out, quoting=csv.QUOTE_ALL, lineterminator="\n")
    writer.writerow(["Phase", *(a.display for a in CoaAction)])
    for phase in KillChainPhase:
        writer.writerow(
            [
                phase.display,
                *(
                    "; ".join(e.name for e in matrix.cell(phase, action))
                    for action in CoaAction
                ),
            ]
        )
    return out.getvalue()
