"""The advice-driven searching agent.

The agent walks depth first, but at a node reached at progress level ``i``
it only tries the ports in the sector named by the ``i``-th advice field, and
only if the node's degree is consistent with that field's length.  A table of
the smallest progress level at which each node was seen stops repeated work.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator, NamedTuple, Optional, Sequence, Union

from .bitcodec import AdvicePayload, check_bits, decode, expected_substring_length, get_sector
from .graph_core import PathWithPorts, PortLabeledGraph

FORWARD = "forward"
BACKTRACK = "backtrack"

Treasure = Union[int, Callable[[int], bool]]


class Move(NamedTuple):
    node: int
    port: int
    kind: str


@dataclass
class HuntOutcome:
    found: bool
    cost: int
    trace: list[Move]
    final_node: int
    per_level_misses: list[int] = field(default_factory=list)
    # (node, progress) for every time the level/table guard passed
    guard_events: list[tuple[int, int]] = field(default_factory=list)


@dataclass
class _Frame:
    node: int
    level: int
    entry_port: Optional[int]
    ports: Iterator[int]


def _as_predicate(treasure: Treasure) -> Callable[[int], bool]:
    if callable(treasure):
        return treasure
    return lambda v: v == treasure


def walk(
    graph: PortLabeledGraph,
    s: int,
    treasure: Treasure,
    payload: AdvicePayload,
    guard_events: Optional[list[tuple[int, int]]] = None,
) -> Iterator[Move]:
    """Yield the agent's moves one at a time; the generator returns
    ``(found, final_node)`` when the search ends."""
    is_treasure = _as_predicate(treasure)
    subs = payload.substrings
    D, ell, logsum = payload.D, payload.ell, payload.logsum
    lowest: dict[int, int] = {}
    stack: list[_Frame] = []

    def enter(v: int, level: int, entry_port: Optional[int]) -> bool:
        if is_treasure(v):
            return True
        ports: Iterator[int] = iter(())
        if level < D and level < lowest.get(v, level + 1):
            lowest[v] = level
            if guard_events is not None:
                guard_events.append((v, level))
            deg = graph.degree(v)
            if expected_substring_length(deg, ell, logsum) == len(subs[level]):
                ports = iter(get_sector(deg, subs[level]))
        stack.append(_Frame(v, level, entry_port, ports))
        return False

    if enter(s, 0, None):
        return True, s
    while stack:
        top = stack[-1]
        deg = graph.degree(top.node)
        port = next((p for p in top.ports if p < deg), None)
        if port is not None:
            w, back = graph.neighbor(top.node, port)
            yield Move(top.node, port, FORWARD)
            if enter(w, top.level + 1, back):
                return True, w
            continue
        stack.pop()
        if top.entry_port is None:
            return False, top.node
        yield Move(top.node, top.entry_port, BACKTRACK)
    raise AssertionError("unreachable")


def level_misses(trace: Sequence[Move], path: PathWithPorts) -> list[int]:
    """Per path node v_i, how many times the agent left v_i by a port other
    than the forward port p_i."""
    index = {v: i for i, (v, _) in enumerate(path.steps)}
    misses = [0] * path.length
    for mv in trace:
        i = index.get(mv.node)
        if i is not None and mv.port != path.steps[i][1]:
            misses[i] += 1
    return misses


def find_treasure(
    graph: PortLabeledGraph,
    s: int,
    treasure: Treasure,
    advice: Union[str, AdvicePayload],
    reference_path: Optional[PathWithPorts] = None,
) -> HuntOutcome:
    payload = advice if isinstance(advice, AdvicePayload) else decode(check_bits(advice))
    events: list[tuple[int, int]] = []
    trace: list[Move] = []
    gen = walk(graph, s, treasure, payload, events)
    while True:
        try:
            trace.append(next(gen))
        except StopIteration as stop:
            found, final = stop.value
            break
    misses = level_misses(trace, reference_path) if reference_path is not None else []
    return HuntOutcome(found, len(trace), trace, final, misses, events)


@dataclass
class ReplayReport:
    consistent: bool
    final_node: int
    cost: int
    error_index: Optional[int] = None
    message: str = ""


def replay(graph: PortLabeledGraph, s: int, trace: Sequence[Move]) -> ReplayReport:
    """Re-walk a trace, checking ports exist and backtracks undo the latest
    forward move."""
    current = s
    trail: list[tuple[int, int]] = []  # (node left, reciprocal port at arrival)
    for idx, mv in enumerate(trace):
        if mv.node != current:
            return ReplayReport(False, current, idx, idx, f"move starts at {mv.node}, agent is at {current}")
        if not 0 <= mv.port < graph.degree(current):
            return ReplayReport(False, current, idx, idx, f"port {mv.port} missing at node {current}")
        nxt, back = graph.neighbor(current, mv.port)
        if mv.kind == FORWARD:
            trail.append((current, back))
        elif mv.kind == BACKTRACK:
            if not trail or trail[-1] != (nxt, mv.port):
                return ReplayReport(False, current, idx, idx, "backtrack does not match trail top")
            trail.pop()
        else:
            return ReplayReport(False, current, idx, idx, f"unknown move kind {mv.kind!r}")
        current = nxt
    return ReplayReport(True, current, len(trace))


def format_trace(trace: Sequence[Move]) -> str:
    return "".join(f"F {m.port}\n" if m.kind == FORWARD else "B\n" for m in trace)
