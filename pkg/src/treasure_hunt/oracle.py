"""Advice construction: shortest path, per-node sector codes, and the choice
of an advice budget for a target cost."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from .bitcodec import (
    ceil_log2,
    concat,
    encode_sector_number,
    expected_substring_length,
    int_to_bits,
)
from .graph_core import PathWithPorts, PortLabeledGraph, shortest_path


@dataclass(frozen=True)
class AdvicePlan:
    path: PathWithPorts
    degrees: tuple[int, ...]
    logsum: int
    requested_ell: int
    ell: int
    beta: Fraction
    substrings: tuple[str, ...]
    encoded: str

    @property
    def D(self) -> int:
        return self.path.length

    @property
    def max_substring_length(self) -> int:
        return max((len(a) for a in self.substrings), default=0)

    @property
    def logsum_bits(self) -> str:
        return int_to_bits(self.logsum)

    def summary(self, num_edges: int) -> dict[str, object]:
        return {
            "D": self.D,
            "e": num_edges,
            "LogSum": self.logsum,
            "requested_ell": self.requested_ell,
            "ell": self.ell,
            "beta": f"{self.beta.numerator}/{self.beta.denominator}",
            "encoded_bits": len(self.encoded),
            "substring_lengths": ",".join(str(len(a)) for a in self.substrings),
        }


def realized_ell(bit_counts: list[int], logsum: int, ell: int) -> int:
    """Largest budget <= ``ell`` that the agent recovers exactly.

    The agent reads the budget back as the sum of the substring lengths, and
    the per-node floors can make that sum smaller than ``ell``; the agent's
    size check then disagrees with the oracle.  Iterating ``ell -> sum of
    floors`` is monotone and stops at the largest fixed point below ``ell``.
    """
    if logsum == 0:
        return 0
    while True:
        total = sum(b * ell // logsum for b in bit_counts)
        if total == ell:
            return ell
        ell = total


def path_logsum(graph: PortLabeledGraph, path: PathWithPorts) -> int:
    return sum(ceil_log2(graph.degree(v)) for v, _ in path.steps)


def create_advice(graph: PortLabeledGraph, s: int, treasure: int, ell: int) -> AdvicePlan:
    path = shortest_path(graph, s, treasure)
    degrees = tuple(graph.degree(v) for v, _ in path.steps)
    bit_counts = [ceil_log2(d) for d in degrees]
    logsum = sum(bit_counts)
    if not 0 <= ell <= logsum:
        raise ValueError(f"ell={ell} outside 0..{logsum}")
    eff = realized_ell(bit_counts, logsum, ell)
    beta = Fraction(eff, logsum) if logsum else Fraction(1)
    substrings = []
    for (v, port), deg in zip(path.steps, degrees):
        z = expected_substring_length(deg, eff, logsum)
        # a None here would need a branching node while LogSum == 0
        assert z is not None
        substrings.append(encode_sector_number(deg, port, z))
    encoded = concat(substrings, int_to_bits(logsum))
    return AdvicePlan(path, degrees, logsum, ell, eff, beta, tuple(substrings), encoded)


def plan_bound(plan: AdvicePlan, num_edges: int, kind: Literal["general", "tree"]) -> Fraction:
    """Certified cost ceiling for a plan: D when the advice is exact, the
    general or tree cost bound otherwise."""
    from .analysis import cost_bound

    if plan.beta == 1:
        return Fraction(plan.D)
    return cost_bound(kind, plan.D, num_edges, plan.ell, plan.logsum, plan.max_substring_length)


def select_ell(
    graph: PortLabeledGraph,
    s: int,
    treasure: int,
    target_cost: int,
    mode: Literal["certified", "empirical"] = "certified",
) -> tuple[int, AdvicePlan]:
    """Smallest budget whose plan meets ``target_cost``.

    ``certified`` trusts only the proven bound; ``empirical`` runs the agent.
    """
    path = shortest_path(graph, s, treasure)
    if target_cost < path.length:
        raise ValueError(f"target cost {target_cost} below distance {path.length}")
    logsum = path_logsum(graph, path)
    kind = "tree" if graph.is_tree() else "general"
    if mode == "empirical":
        from .agent import find_treasure
    elif mode != "certified":
        raise ValueError(f"unknown mode {mode!r}")

    for ell in range(logsum + 1):
        plan = create_advice(graph, s, treasure, ell)
        if mode == "certified":
            ok = plan_bound(plan, graph.num_edges, kind) <= target_cost
        else:
            outcome = find_treasure(graph, s, treasure, plan.encoded)
            ok = outcome.found and outcome.cost <= target_cost
        if ok:
            return ell, plan
    raise AssertionError("full advice must reach cost D")
