"""Threat-informed defense engine.

Turns an ATT&CK extract plus analyst case observations into adversary
profiles, kill chain narratives, diamond-model activity threads and
course-of-action matrices, with an HTTP service and CLI on top.
"""

from .attack import (
    Corpus,
    Group,
    Software,
    Tactic,
    Technique,
    parse_stix_bundle,
    resolve_group,
    software_for_group,
    technique_lookup,
    techniques_for_group,
)
from .cases import Case, CaseReport, Observation, build_report, parse_case, serialize_case
from .coa import ActionMap, CoaAction, CoaMatrix, action_for, build_coa_matrix, render_coa
from .defense import (
    DefenseMap,
    DefensiveTactic,
    DefensiveTechnique,
    countermeasures_for,
    parse_defense_map,
    related_offensive_techniques,
)
from .diamond import (
    ActivityThread,
    Combinator,
    Confidence,
    DiamondArc,
    DiamondEvent,
    EventStatus,
    PivotQuery,
    add_arc,
    add_event,
    enumerate_paths,
    phase_grid,
    pivot,
    validate_thread,
)
from .killchain import KillChainPhase, PhaseMap, assign_phases, narrative, phase_for_tactic
from .profiles import (
    AdversaryProfile,
    NavigatorLayer,
    ScenarioFlow,
    build_profile,
    build_scenario_flow,
    export_navigator_layer,
    layer_from_json,
    layer_to_json,
    ttp_table,
)

__version__ = "0.1.0"
