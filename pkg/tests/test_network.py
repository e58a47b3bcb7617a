import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from anet.network import Family, Network, Variable, ignorance_prior, prior_family
from anet.ranks import INF, conj, equals

from netgen import random_network


def engine_network() -> Network:
    fam = Family(
        child="engine_running",
        parents=("turn_key",),
        rows={
            ("false",): {"false": 0, "true": 0},
            ("true",): {"false": 2, "true": 0},
        },
    )
    return Network.build(
        [Variable("turn_key"), Variable("engine_running", kind="persistence")],
        [ignorance_prior("turn_key", ("false", "true")), fam],
    )


class TestValidate:
    def test_engine_network_is_valid(self):
        assert engine_network().validate() == []

    def test_unnormalized_row_flagged(self):
        net = engine_network().replace_family(
            Family(
                child="engine_running",
                parents=("turn_key",),
                rows={
                    ("false",): {"false": 0, "true": 0},
                    ("true",): {"false": 2, "true": 1},
                },
            )
        )
        violations = net.validate()
        assert any("not normalized" in v and "('true',)" in v for v in violations)

    def test_dangling_parent_flagged(self):
        net = Network.build(
            [Variable("a")],
            [
                Family(
                    child="a",
                    parents=("ghost",),
                    rows={("false",): {"false": 0, "true": 0}},
                )
            ],
        )
        assert any("dangling parent" in v for v in net.validate())

    def test_missing_row_flagged(self):
        net = engine_network().replace_family(
            Family(
                child="engine_running",
                parents=("turn_key",),
                rows={("true",): {"false": 2, "true": 0}},
            )
        )
        assert any("missing row" in v and "('false',)" in v for v in net.validate())

    def test_cycle_flagged(self):
        rows = {
            ("false",): {"false": 0, "true": 0},
            ("true",): {"false": 0, "true": 0},
        }
        net = Network.build(
            [Variable("a"), Variable("b")],
            [
                Family(child="a", parents=("b",), rows=dict(rows)),
                Family(child="b", parents=("a",), rows=dict(rows)),
            ],
        )
        assert any("cycle" in v for v in net.validate())

    def test_nonbinary_persistence_flagged(self):
        net = Network.build(
            [Variable("gear", values=("low", "mid", "high"), kind="persistence")],
            [ignorance_prior("gear", ("low", "mid", "high"))],
        )
        assert any("must be binary" in v for v in net.validate())

    def test_bad_precondition_flagged(self):
        net = Network.build(
            [Variable("a", controllable=True, preconditions=(("missing", "true"),))],
            [ignorance_prior("a", ("false", "true"))],
        )
        assert any("precondition" in v for v in net.validate())


class TestJointRank:
    def test_failed_start_costs_two(self):
        world = {"turn_key": "true", "engine_running": "false"}
        assert engine_network().joint_rank(world) == 2

    def test_unturned_key_running_engine_is_plausible(self):
        world = {"turn_key": "false", "engine_running": "true"}
        assert engine_network().joint_rank(world) == 0

    def test_infinite_entry_saturates(self):
        net = Network.build(
            [Variable("gun")],
            [prior_family("gun", {"false": 0, "true": INF})],
        )
        assert net.joint_rank({"gun": "true"}) == INF


class TestRankingOf:
    def test_engine_table(self):
        table = engine_network().ranking_of()
        expected = {
            ("true", "true"): 0,   # key order: engine_running, turn_key
            ("false", "true"): 2,
            ("true", "false"): 0,
            ("false", "false"): 0,
        }
        assert table.vars == ("engine_running", "turn_key")
        assert dict(table.ranks) == expected

    def test_single_root_prior_verbatim(self):
        net = Network.build(
            [Variable("a", values=("x", "y"))],
            [prior_family("a", {"x": 0, "y": 3})],
        )
        assert dict(net.ranking_of().ranks) == {("x",): 0, ("y",): 3}

    def test_independent_roots_add(self):
        net = Network.build(
            [Variable("a"), Variable("b")],
            [
                prior_family("a", {"false": 0, "true": 2}),
                prior_family("b", {"false": 0, "true": 3}),
            ],
        )
        table = net.ranking_of()
        assert table.world_rank({"a": "true", "b": "true"}) == 5
        assert table.world_rank({"a": "false", "b": "true"}) == 3

    def test_oracle_bound_enforced(self):
        net = random_network(random.Random(0), 8)
        with pytest.raises(ValueError):
            net.ranking_of(max_worlds=10)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(min_value=0, max_value=10_000), n=st.integers(2, 8))
def test_ranking_of_is_normalized(seed, n):
    net = random_network(random.Random(seed), n)
    assert min(net.ranking_of().ranks.values()) == 0


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(min_value=0, max_value=10_000), n=st.integers(2, 10))
def test_family_rows_are_conditional_ranks(seed, n):
    """Each matrix entry equals the conditional rank the joint assigns it."""
    net = random_network(random.Random(seed), n)
    table = net.ranking_of()
    for child, fam in net.families.items():
        for inst, row in fam.rows.items():
            given_parents = conj(*(equals(p, v) for p, v in zip(fam.parents, inst)))
            parent_rank = table.marginal(given_parents)
            if parent_rank == INF:
                continue
            for value, entry in row.items():
                both = table.marginal(conj(given_parents, equals(child, value)))
                if both == INF:
                    assert entry == INF
                else:
                    assert both - parent_rank == entry
