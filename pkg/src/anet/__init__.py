"""Ranked action networks.

Causal networks quantified with integer surprise ranks, extended with a
suppressor model of persistence and direct-intervention action nodes,
compiled over a time horizon and queried by exact min-sum inference.
"""

from .ranks import (
    INF,
    Belief,
    InconsistentEvidenceError,
    Predicate,
    Rank,
    RankingTable,
    World,
    rank_add,
    rank_sub,
)
from .network import Family, InvalidNetworkError, Network, Variable, ignorance_prior, prior_family
from .expansion import (
    ExpandedFamily,
    expand_family,
    expand_network,
    suppressor_values,
    verify_exact_expansion,
)
from .actions import augment_with_action
from .temporal import TemporalNetwork, node_id, parse_node_id, unfold
from .inference import (
    Evidence,
    Explanations,
    Posterior,
    WhatIf,
    eliminate,
    enumerate_rank,
    evidence_rank,
    most_surprising_explanations,
    whatif,
)
from .fileformat import (
    Assertion,
    ParseError,
    QueryRef,
    ScenarioDocument,
    parse_network,
    parse_scenario,
    serialize_network,
    serialize_scenario,
)

__all__ = [
    "INF",
    "Belief",
    "InconsistentEvidenceError",
    "Predicate",
    "Rank",
    "RankingTable",
    "World",
    "rank_add",
    "rank_sub",
    "Family",
    "InvalidNetworkError",
    "Network",
    "Variable",
    "ignorance_prior",
    "prior_family",
    "ExpandedFamily",
    "expand_family",
    "expand_network",
    "suppressor_values",
    "verify_exact_expansion",
    "augment_with_action",
    "TemporalNetwork",
    "node_id",
    "parse_node_id",
    "unfold",
    "Evidence",
    "Explanations",
    "Posterior",
    "WhatIf",
    "eliminate",
    "enumerate_rank",
    "evidence_rank",
    "most_surprising_explanations",
    "whatif",
    "Assertion",
    "ParseError",
    "QueryRef",
    "ScenarioDocument",
    "parse_network",
    "parse_scenario",
    "serialize_network",
    "serialize_scenario",
]
