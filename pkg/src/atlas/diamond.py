"""Diamond-model events, attributed arcs and activity threads.

Threads are values: add_event/add_arc return a new thread and never touch the
input. The arc graph must stay acyclic and phase-monotone (an arc never points
to an earlier kill chain phase).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from graphlib import CycleError, TopologicalSorter

from .attack import validate_technique_id
from .errors import DuplicateIdError, NotFoundError, ValidationError
from .killchain import KillChainPhase


class EventStatus(Enum):
    HYPOTHESIS = "hypothesis"
    REAL = "real"


class Confidence(Enum):
    LOW = "low"
    MEDIUM = "medium"
    HIGH = "high"

    @property
    def order(self) -> int:
        return ("low", "medium", "high").index(self.value)


class Combinator(Enum):
    AND = "AND"
    OR = "OR"


#: fields a pivot query may target
PIVOT_FIELDS = (
    "adversary",
    "capability",
    "infrastructure",
    "victim",
    "status",
    "confidence",
    "phase",
    "technique",
)

_VERTEX_FIELDS = ("adversary", "capability", "infrastructure", "victim")


@dataclass(frozen=True)
class PivotQuery:
    field: str
    value: str

    def __post_init__(self):
        if self.field not in PIVOT_FIELDS:
            raise ValidationError(f"unknown pivot field {self.field!r}")


@dataclass(frozen=True)
class DiamondEvent:
    id: int
    phase: KillChainPhase
    adversary: str = ""
    capability: str = ""
    infrastructure: str = ""
    victim: str = ""
    status: EventStatus = EventStatus.HYPOTHESIS
    confidence: Confidence = Confidence.LOW
    description: str = ""
    techniques: frozenset[str] = frozenset()


@dataclass(frozen=True)
class DiamondArc:
    label: str
    from_id: int
    to_id: int
    combinator: Combinator = Combinator.AND
    status: EventStatus = EventStatus.HYPOTHESIS
    confidence: Confidence = Confidence.LOW
    provides: str = ""


@dataclass(frozen=True)
class ActivityThread:
    events: tuple[DiamondEvent, ...] = ()
    arcs: tuple[DiamondArc, ...] = ()

    def event_by_id(self, event_id: int) -> DiamondEvent:
        for event in self.events:
            if event.id == event_id:
                return event
        raise NotFoundError(f"no event {event_id}")

    @property
    def event_ids(self) -> set[int]:
        return {e.id for e in self.events}


def _check_event(event: DiamondEvent) -> None:
    if not isinstance(event.id, int) or event.id <= 0:
        raise ValidationError(f"event id must be a positive integer, got {event.id!r}")
    if event.status is EventStatus.REAL:
        empty = [f for f in _VERTEX_FIELDS if not getattr(event, f)]
        if empty:
            raise ValidationError(
                f"real event {event.id} has empty vertex fields: {', '.join(empty)}"
            )
    for tid in event.techniques:
        try:
            validate_technique_id(tid)
        except ValueError as exc:
            raise ValidationError(f"event {event.id}: {exc}") from None


def add_event(thread: ActivityThread, event: DiamondEvent) -> ActivityThread:
    """Return a new thread with the event added; arcs are untouched."""
    _check_event(event)
    if event.id in thread.event_ids:
        raise DuplicateIdError(f"duplicate event id {event.id}")
    events = tuple(sorted((*thread.events, event), key=lambda e: e.id))
    return replace(thread, events=events)


def _would_cycle(arcs: tuple[DiamondArc, ...]) -> bool:
    sorter = TopologicalSorter()
    for arc in arcs:
        sorter.add(arc.to_id, arc.from_id)
    try:
        sorter.prepare()
    except CycleError:
        return True
    return False


def add_arc(thread: ActivityThread, arc: DiamondArc) -> ActivityThread:
    """Return a new thread with the arc added; re-validates the graph shape."""
    if arc.from_id == arc.to_id:
        raise ValidationError(f"arc {arc.label}: self-loop on event {arc.from_id}")
    if not arc.provides:
        raise ValidationError(f"arc {arc.label}: 'provides' must not be empty")
    ids = thread.event_ids
    for endpoint in (arc.from_id, arc.to_id):
        if endpoint not in ids:
            raise NotFoundError(f"arc {arc.label}: unknown event {endpoint}")
    source = thread.event_by_id(arc.from_id)
    target = thread.event_by_id(arc.to_id)
    if source.phase.order > target.phase.order:
        raise ValidationError(
            f"arc {arc.label}: phase regression {source.phase.display} -> {target.phase.display}"
        )
    arcs = tuple(sorted((*thread.arcs, arc), key=lambda a: (a.label, a.from_id, a.to_id)))
    if _would_cycle(arcs):
        raise ValidationError(f"arc {arc.label}: introduces a cycle")
    return replace(thread, arcs=arcs)


def validate_thread(thread: ActivityThread) -> list[str]:
    """Every invariant violation as one human-readable entry; empty means valid."""
    violations: list[str] = []
    seen: set[int] = set()
    for event in thread.events:
        if event.id in seen:
            violations.append(f"duplicate event id {event.id}")
        seen.add(event.id)
        try:
            _check_event(event)
        except ValidationError as exc:
            violations.append(str(exc))
    by_id = {e.id: e for e in thread.events}
    for arc in thread.arcs:
        missing = [i for i in (arc.from_id, arc.to_id) if i not in by_id]
        if missing:
            violations.append(
                f"arc {arc.label}: dangling endpoint(s) {', '.join(map(str, missing))}"
            )
            continue
        if arc.from_id == arc.to_id:
            violations.append(f"arc {arc.label}: self-loop on event {arc.from_id}")
            continue
        if not arc.provides:
            violations.append(f"arc {arc.label}: 'provides' must not be empty")
        source, target = by_id[arc.from_id], by_id[arc.to_id]
        if source.phase.order > target.phase.order:
            violations.append(
                f"arc {arc.label}: phase regression "
                f"{source.phase.display} -> {target.phase.display}"
            )
    clean_arcs = tuple(
        a for a in thread.arcs if a.from_id in by_id and a.to_id in by_id and a.from_id != a.to_id
    )
    if _would_cycle(clean_arcs):
        violations.append("arc graph contains a cycle")
    return violations


def pivot(thread: ActivityThread, field: str, value: str) -> list[DiamondEvent]:
    """Events matching a query on one diamond feature.

    Vertex fields match by case-insensitive substring; status, confidence,
    phase and technique match exactly.
    """
    query = PivotQuery(field, value)
    field, value = query.field, query.value
    if field in _VERTEX_FIELDS:
        needle = value.casefold()
        predicate = lambda e: needle in getattr(e, field).casefold()
    elif field == "status":
        predicate = lambda e: e.status.value == value
    elif field == "confidence":
        predicate = lambda e: e.confidence.value == value
    elif field == "phase":
        predicate = lambda e: e.phase.value == value
    else:  # technique
        predicate = lambda e: value in e.techniques
    return [event for event in thread.events if predicate(event)]


def _linearize(ids: frozenset[int], arcs: tuple[DiamondArc, ...]) -> tuple[int, ...]:
    # deterministic topological order restricted to the set, smallest id first
    succ: dict[int, set[int]] = {i: set() for i in ids}
    indeg: dict[int, int] = {i: 0 for i in ids}
    for arc in arcs:
        if arc.from_id in ids and arc.to_id in ids:
            if arc.to_id not in succ[arc.from_id]:
                succ[arc.from_id].add(arc.to_id)
                indeg[arc.to_id] += 1
    order: list[int] = []
    ready = sorted(i for i in ids if indeg[i] == 0)
    while ready:
        node = ready.pop(0)
        order.append(node)
        for nxt in sorted(succ[node]):
            indeg[nxt] -= 1
            if indeg[nxt] == 0:
                ready.append(nxt)
        ready.sort()
    return tuple(order)


def enumerate_paths(thread: ActivityThread) -> list[list[int]]:
    """Every maximal root-to-sink walk consistent with the arc combinators.

    All incoming AND arcs of an event must be satisfied within one path; each
    incoming OR arc is an alternative that yields its own path. Events with no
    arcs at all are single-event paths. Results are sorted lexicographically.
    """
    violations = validate_thread(thread)
    if violations:
        raise ValidationError("; ".join(violations))

    in_and: dict[int, list[DiamondArc]] = {e.id: [] for e in thread.events}
    in_or: dict[int, list[DiamondArc]] = {e.id: [] for e in thread.events}
    has_out: set[int] = set()
    for arc in thread.arcs:
        (in_and if arc.combinator is Combinator.AND else in_or)[arc.to_id].append(arc)
        has_out.add(arc.from_id)

    memo: dict[int, tuple[frozenset[int], ...]] = {}

    def realizations(event_id: int) -> tuple[frozenset[int], ...]:
        if event_id in memo:
            return memo[event_id]
        required: tuple[frozenset[int], ...] = (frozenset({event_id}),)
        for arc in sorted(in_and[event_id], key=lambda a: a.from_id):
            required = tuple(
                base | upstream
                for base in required
                for upstream in realizations(arc.from_id)
            )
        alternatives = sorted(in_or[event_id], key=lambda a: a.from_id)
        if alternatives:
            required = tuple(
                base | upstream
                for base in required
                for arc in alternatives
                for upstream in realizations(arc.from_id)
            )
        memo[event_id] = required
        return required

    sinks = sorted(e.id for e in thread.events if e.id not in has_out)
    paths: set[tuple[int, ...]] = set()
    for sink in sinks:
        for ids in realizations(sink):
            paths.add(_linearize(ids, thread.arcs))
    return sorted(list(p) for p in paths)


def phase_grid(thread: ActivityThread) -> dict[KillChainPhase, list[DiamondEvent]]:
    """Events bucketed by phase and ordered by id; all seven phases present."""
    grid: dict[KillChainPhase, list[DiamondEvent]] = {phase: [] for phase in KillChainPhase}
    for event in sorted(thread.events, key=lambda e: e.id):
        grid[event.phase].append(event)
    return grid
