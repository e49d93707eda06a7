"""Advice-based treasure hunt and rendezvous for mobile agents in
port-labeled graphs."""

from .agent import HuntOutcome, Move, find_treasure, replay
from .bitcodec import AdvicePayload, MalformedAdvice, concat, decode
from .graph_core import (
    CaterpillarSpec,
    GraphError,
    PathWithPorts,
    PortLabeledGraph,
    double_for_rendezvous,
    make_caterpillar,
    random_connected_graph,
    random_tree,
    shortest_path,
    validate,
)
from .oracle import AdvicePlan, create_advice, select_ell
from .rendezvous import RendezvousOutcome, StrategyIncomplete, rendezvous_via_th, th_via_rendezvous

__all__ = [
    "AdvicePayload", "AdvicePlan", "CaterpillarSpec", "GraphError", "HuntOutcome",
    "MalformedAdvice", "Move", "PathWithPorts", "PortLabeledGraph", "RendezvousOutcome",
    "StrategyIncomplete", "concat", "create_advice", "decode", "double_for_rendezvous",
    "find_treasure", "make_caterpillar", "random_connected_graph", "random_tree", "rendezvous_via_th",
    "replay", "select_ell", "shortest_path", "th_via_rendezvous", "validate",
]
