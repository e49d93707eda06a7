"""Two-agent rendezvous built on treasure hunt, and treasure hunt recovered
from an arbitrary rendezvous strategy on a doubled graph."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

from .agent import HuntOutcome, Move, walk
from .bitcodec import check_bits, decode
from .graph_core import PortLabeledGraph, double_for_rendezvous
from .oracle import create_advice


class StrategyIncomplete(RuntimeError):
    pass


@dataclass
class RendezvousOutcome:
    met: bool
    meeting_node: Optional[int]
    rounds: int
    total_cost: int
    advice_a: str
    advice_b: str
    trace_a: list[Move] = field(default_factory=list)
    trace_b: list[Move] = field(default_factory=list)


# An agent program gets the graph, its start, its advice and a probe telling
# whether the other agent stands at a given node; it yields one move per round.
AgentProgram = Callable[[PortLabeledGraph, int, str, Callable[[int], bool]], Iterator[Move]]


def advice_program(graph: PortLabeledGraph, start: int, advice: str,
                   sees_other: Callable[[int], bool]) -> Iterator[Move]:
    """Role selected by the first advice bit: ``0`` stays put, ``1`` hunts
    for the other agent using the rest of the string as hunt advice."""
    check_bits(advice)
    if not advice or advice[0] == "0":
        return
    yield from walk(graph, start, sees_other, decode(advice[1:]))


def simulate(graph: PortLabeledGraph, starts: tuple[int, int], advice: tuple[str, str],
             program: AgentProgram = advice_program, max_rounds: Optional[int] = None) -> RendezvousOutcome:
    """Synchronous rounds: each agent makes at most one move per round, and a
    meeting is checked at the end of every round."""
    pos = list(starts)
    traces: list[list[Move]] = [[], []]
    progs = [program(graph, pos[i], advice[i], lambda v, j=1 - i: pos[j] == v) for i in (0, 1)]
    active = [True, True]
    rounds = 0
    while pos[0] != pos[1] and any(active):
        if max_rounds is not None and rounds >= max_rounds:
            break
        rounds += 1
        moves: list[Optional[Move]] = [None, None]
        for i in (0, 1):
            if active[i]:
                try:
                    moves[i] = next(progs[i])
                except StopIteration:
                    active[i] = False
        if moves == [None, None] and not any(active):
            rounds -= 1
            break
        for i, mv in enumerate(moves):
            if mv is not None:
                traces[i].append(mv)
                pos[i] = graph.neighbor(mv.node, mv.port)[0]
    met = pos[0] == pos[1]
    return RendezvousOutcome(
        met, pos[0] if met else None, rounds, len(traces[0]) + len(traces[1]),
        advice[0], advice[1], traces[0], traces[1],
    )


def rendezvous_via_th(graph: PortLabeledGraph, a_start: int, b_start: int,
                      ell: Optional[int] = None) -> RendezvousOutcome:
    """Agent b is told to wait; agent a hunts for b with oracle advice built
    as if the treasure sat at b's start.  ``ell`` defaults to full advice."""
    if a_start == b_start:
        raise ValueError("agents must start at distinct nodes")
    if ell is None:
        ell = create_advice(graph, a_start, b_start, 0).logsum
    alpha = create_advice(graph, a_start, b_start, ell).encoded
    return simulate(graph, (a_start, b_start), ("1" + alpha, "0"))


def th_via_rendezvous(graph: PortLabeledGraph, v: int, w: int,
                      rv_strategy: Callable[[PortLabeledGraph, int, int], RendezvousOutcome]) -> HuntOutcome:
    """Run ``rv_strategy`` on the doubled graph and return the solo walk of the
    first agent to cross the joining edge, cut at its first arrival at its
    copy of ``w`` and mapped back onto ``graph``."""
    doubled, a_start, b_start = double_for_rendezvous(graph, v, w)
    n = graph.n
    f_port = graph.degree(w)
    result = rv_strategy(doubled, a_start, b_start)

    crossings = []
    for i, trace in enumerate((result.trace_a, result.trace_b)):
        own_w = w + i * n
        at = next((t for t, mv in enumerate(trace) if mv.node == own_w and mv.port == f_port), None)
        if at is not None:
            crossings.append((at, i))
    if not crossings:
        raise StrategyIncomplete("no agent crossed the joining edge")
    at, i = min(crossings)
    trace = (result.trace_a, result.trace_b)[i]

    pos = v + i * n
    walk_g: list[Move] = []
    for mv in trace[:at]:
        if pos == w + i * n:
            break
        walk_g.append(Move(mv.node - i * n, mv.port, mv.kind))
        pos = doubled.neighbor(mv.node, mv.port)[0]
    # the agent must stand on its copy of w before it can take the joining edge
    assert pos == w + i * n
    return HuntOutcome(True, len(walk_g), walk_g, w)
