import pytest
from hypothesis import given, strategies as st

from atlas.attack import Tactic
from atlas.errors import ValidationError
from atlas.killchain import (
    NO_OBSERVATIONS,
    KillChainPhase,
    PhaseMap,
    assign_phases,
    narrative,
    phase_for_tactic,
)


class TestPhases:
    def test_exactly_seven_in_order(self):
        assert [p.value for p in KillChainPhase] == [
            "reconnaissance",
            "weaponization",
            "delivery",
            "exploitation",
            "installation",
            "command-and-control",
            "actions-on-objectives",
        ]

    def test_total_order(self):
        orders = [p.order for p in KillChainPhase]
        assert orders == sorted(orders) and len(set(orders)) == 7


class TestPhaseMap:
    def test_default_is_total(self):
        phase_map = PhaseMap.default()
        for tactic in Tactic:
            assert isinstance(phase_for_tactic(phase_map, tactic), KillChainPhase)

    def test_pinned_assignments(self):
        phase_map = PhaseMap.default()
        assert phase_for_tactic(phase_map, Tactic.INITIAL_ACCESS) is KillChainPhase.DELIVERY
        assert (
            phase_for_tactic(phase_map, Tactic.COMMAND_AND_CONTROL)
            is KillChainPhase.COMMAND_AND_CONTROL
        )
        assert (
            phase_for_tactic(phase_map, Tactic.IMPACT) is KillChainPhase.ACTIONS_ON_OBJECTIVES
        )

    def test_partial_map_rejected(self):
        with pytest.raises(ValidationError, match="missing"):
            PhaseMap({Tactic.IMPACT: KillChainPhase.ACTIONS_ON_OBJECTIVES})

    def test_overrides(self):
        phase_map = PhaseMap.default().with_overrides(
            {Tactic.DISCOVERY: KillChainPhase.INSTALLATION}
        )
        assert phase_for_tactic(phase_map, Tactic.DISCOVERY) is KillChainPhase.INSTALLATION
        # base map untouched
        assert (
            phase_for_tactic(PhaseMap.default(), Tactic.DISCOVERY)
            is KillChainPhase.ACTIONS_ON_OBJECTIVES
        )


class TestAssignPhases:
    def test_whispergate_placements(self, whispergate, phase_map):
        effective = phase_map.with_overrides(whispergate.phase_overrides)
        buckets = assign_phases(effective, whispergate.observation_pairs())
        assert "T1542.003" in buckets[KillChainPhase.INSTALLATION]
        assert "T1105" in buckets[KillChainPhase.COMMAND_AND_CONTROL]
        assert {"T1485", "T1561"} <= set(buckets[KillChainPhase.ACTIONS_ON_OBJECTIVES])

    def test_empty_observations(self, phase_map):
        buckets = assign_phases(phase_map, [])
        assert list(buckets) == list(KillChainPhase)
        assert all(ids == [] for ids in buckets.values())

    @given(
        observations=st.lists(
            st.tuples(
                st.sampled_from(list(Tactic)),
                st.from_regex(r"T[0-9]{4}", fullmatch=True),
            ),
            max_size=30,
            unique=True,
        )
    )
    def test_partition_property(self, observations):
        # with distinct observations, every pair lands in exactly one bucket
        buckets = assign_phases(PhaseMap.default(), observations)
        total = sum(len(ids) for ids in buckets.values())
        distinct = {(PhaseMap.default().assignment[t], tid) for t, tid in observations}
        assert total == len(distinct)


class TestNarrative:
    def test_seven_rows_in_order(self, phase_map):
        rows = narrative(assign_phases(phase_map, []), {})
        assert [r.phase for r in rows] == list(KillChainPhase)

    def test_placeholder_prose(self, phase_map):
        rows = narrative(assign_phases(phase_map, []), {})
        assert all(r.prose == NO_OBSERVATIONS for r in rows)

    def test_prose_without_techniques(self, whispergate, phase_map):
        effective = phase_map.with_overrides(whispergate.phase_overrides)
        buckets = assign_phases(effective, whispergate.observation_pairs())
        rows = narrative(buckets, whispergate.phase_prose)
        weaponization = rows[KillChainPhase.WEAPONIZATION.order]
        assert "stage1.exe" in weaponization.prose
        assert weaponization.techniques == ()

    def test_final_row_mentions_mbr(self, whispergate, phase_map):
        effective = phase_map.with_overrides(whispergate.phase_overrides)
        buckets = assign_phases(effective, whispergate.observation_pairs())
        rows = narrative(buckets, whispergate.phase_prose)
        assert "MBR" in rows[6].prose
