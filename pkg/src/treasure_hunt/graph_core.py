"""Port-labeled graphs: representation, validation, shortest paths and the
graph families used by the hunt and rendezvous experiments.

Nodes are addressed by index ``0..n-1``; each node also carries a distinct
nonnegative label, which is the only identity an agent ever sees.  The
adjacency of node ``v`` is a tuple indexed by local port, each entry being
``(neighbor index, reciprocal port at neighbor)``.
"""

from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

Entry = Optional[tuple[int, int]]


class GraphError(ValueError):
    """Raised when a graph or instance cannot be built or parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class PortLabeledGraph:
    labels: tuple[int, ...]
    adjacency: tuple[tuple[Entry, ...], ...]

    @classmethod
    def from_edges(cls, labels: Sequence[int], edges: Iterable[tuple[int, int, int, int]]) -> "PortLabeledGraph":
        """Build from ``(u, port_u, v, port_v)`` edge records.

        Raises GraphError on duplicate port use or out-of-range nodes.  Port
        gaps are kept as ``None`` entries so that :func:`validate` can name them.
        """
        n = len(labels)
        slots: list[dict[int, tuple[int, int]]] = [{} for _ in range(n)]
        for u, pu, v, pv in edges:
            for node, port in ((u, pu), (v, pv)):
                if not 0 <= node < n:
                    raise GraphError(f"node index {node} out of range 0..{n - 1}")
                if port < 0:
                    raise GraphError(f"negative port {port} at node {node}")
                if port in slots[node]:
                    raise GraphError(f"port {port} at node {node} used twice")
            slots[u][pu] = (v, pv)
            slots[v][pv] = (u, pu)
        adjacency = []
        for table in slots:
            width = max(table) + 1 if table else 0
            adjacency.append(tuple(table.get(p) for p in range(width)))
        return cls(tuple(labels), tuple(adjacency))

    @property
    def n(self) -> int:
        return len(self.labels)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def neighbor(self, v: int, port: int) -> tuple[int, int]:
        entry = self.adjacency[v][port]
        if entry is None:
            raise GraphError(f"port {port} at node {v} is unassigned")
        return entry

    @property
    def num_edges(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def is_tree(self) -> bool:
        return self.num_edges == self.n - 1

    def edges(self) -> Iterator[tuple[int, int, int, int]]:
        """Each edge once, as ``(u, port_u, v, port_v)`` with ``u < v``."""
        for u, row in enumerate(self.adjacency):
            for pu, entry in enumerate(row):
                if entry is not None and u < entry[0]:
                    yield (u, pu, entry[0], entry[1])


@dataclass(frozen=True)
class PathWithPorts:
    steps: tuple[tuple[int, int], ...]
    terminal: int

    @property
    def length(self) -> int:
        return len(self.steps)

    @property
    def nodes(self) -> tuple[int, ...]:
        return tuple(v for v, _ in self.steps) + (self.terminal,)


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str


def validate(graph: PortLabeledGraph) -> list[Violation]:
    out: list[Violation] = []
    n = graph.n
    seen_labels: dict[int, int] = {}
    for v, label in enumerate(graph.labels):
        if label < 0:
            out.append(Violation("label", f"node {v} has negative label {label}"))
        if label in seen_labels:
            out.append(Violation("label", f"nodes {seen_labels[label]} and {v} share label {label}"))
        seen_labels.setdefault(label, v)
    if len(graph.adjacency) != n:
        out.append(Violation("shape", f"{len(graph.adjacency)} adjacency rows for {n} labels"))
        return out

    for u, row in enumerate(graph.adjacency):
        targets: set[int] = set()
        for p, entry in enumerate(row):
            if entry is None:
                out.append(Violation("port", f"node {u} has no edge on port {p} (degree {len(row)})"))
                continue
            v, q = entry
            if not 0 <= v < n:
                out.append(Violation("shape", f"port {p} at node {u} leads to missing node {v}"))
                continue
            if v == u:
                out.append(Violation("self-loop", f"port {p} at node {u}"))
            if v in targets:
                out.append(Violation("parallel", f"node {u} has several edges to node {v}"))
            targets.add(v)
            back = graph.adjacency[v][q] if 0 <= q < len(graph.adjacency[v]) else None
            if back != (u, p):
                out.append(Violation(
                    "reciprocity",
                    f"port {p} at node {u} leads to ({v}, {q}) but that port leads to {back}",
                ))

    if n and any(graph.adjacency):
        reached = _reachable(graph, 0)
        if len(reached) != n:
            missing = min(set(range(n)) - reached)
            out.append(Violation("connectivity", f"node {missing} unreachable from node 0"))
    elif n > 1:
        out.append(Violation("connectivity", f"{n} nodes and no edges"))
    return out


def _reachable(graph: PortLabeledGraph, s: int) -> set[int]:
    seen = {s}
    stack = [s]
    while stack:
        u = stack.pop()
        for entry in graph.adjacency[u]:
            if entry is not None and 0 <= entry[0] < graph.n and entry[0] not in seen:
                seen.add(entry[0])
                stack.append(entry[0])
    return seen


def bfs_distances(graph: PortLabeledGraph, s: int) -> list[int]:
    dist = [-1] * graph.n
    dist[s] = 0
    queue = deque([s])
    while queue:
        u = queue.popleft()
        for v, _ in graph.adjacency[u]:
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def shortest_path(graph: PortLabeledGraph, s: int, t: int) -> PathWithPorts:
    """Shortest s->t path; ties go to the first BFS discovery with ports
    expanded in ascending order."""
    parent: dict[int, tuple[int, int]] = {s: (-1, -1)}
    queue = deque([s])
    while queue and t not in parent:
        u = queue.popleft()
        for p, (v, _) in enumerate(graph.adjacency[u]):
            if v not in parent:
                parent[v] = (u, p)
                queue.append(v)
    if t not in parent:
        raise GraphError(f"node {t} unreachable from node {s}")
    steps = []
    v = t
    while v != s:
        u, p = parent[v]
        steps.append((u, p))
        v = u
    return PathWithPorts(tuple(reversed(steps)), t)


# -- caterpillars -----------------------------------------------------------

@dataclass(frozen=True)
class CaterpillarSpec:
    D: int
    k: int
    forward_ports: tuple[int, ...] = field(default=())

    def check(self) -> None:
        if self.D < 1 or self.k < 2:
            raise GraphError(f"caterpillar needs D >= 1 and k >= 2, got D={self.D}, k={self.k}")
        if len(self.forward_ports) != self.D:
            raise GraphError(f"expected {self.D} forward ports, got {len(self.forward_ports)}")
        p = self.forward_ports
        if not 0 <= p[0] < self.k:
            raise GraphError(f"p_0={p[0]} outside 0..{self.k - 1}")
        for i in range(1, self.D):
            if not 0 <= p[i] <= self.k:
                raise GraphError(f"p_{i}={p[i]} outside 0..{self.k}")
            if p[i] == p[i - 1]:
                raise GraphError(f"p_{i}={p[i]} equals the back-port at v_{i}")


def caterpillar_specs(D: int, k: int) -> Iterator[CaterpillarSpec]:
    """All k**D members of the family, in lexicographic port order."""
    def extend(prefix: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        if len(prefix) == D:
            yield prefix
            return
        choices = range(k) if not prefix else (p for p in range(k + 1) if p != prefix[-1])
        for p in choices:
            yield from extend(prefix + (p,))

    for ports in extend(()):
        yield CaterpillarSpec(D, k, ports)


def make_caterpillar(spec: CaterpillarSpec) -> tuple[PortLabeledGraph, int, int]:
    """Spine v_0..v_D at indices 0..D, leaves after; returns (graph, v_0, v_D)."""
    spec.check()
    D, k, fwd = spec.D, spec.k, spec.forward_ports
    labels = [i * (k + 2) for i in range(D + 1)]
    edges = []
    for i in range(D):
        back = fwd[i - 1] if i > 0 else None
        # the far end of the last spine edge is the degree-1 treasure node
        far_port = fwd[i] if i < D - 1 else 0
        edges.append((i, fwd[i], i + 1, far_port))
        deg = k if i == 0 else k + 1
        for j in range(deg):
            if j == fwd[i] or j == back:
                continue
            leaf = len(labels)
            labels.append(i * (k + 2) + j + 1)
            edges.append((i, j, leaf, 0))
    return PortLabeledGraph.from_edges(labels, edges), 0, D


# -- rendezvous doubling ----------------------------------------------------

def double_for_rendezvous(graph: PortLabeledGraph, v: int, w: int) -> tuple[PortLabeledGraph, int, int]:
    """Two copies of ``graph`` joined by an edge between the copies of ``w``.

    Copy ``i`` occupies indices ``i*n .. i*n+n-1`` and maps label ``l`` to
    ``2l+i``.  The joining edge uses port ``deg(w)`` at both ends.
    """
    if v == w:
        raise GraphError("doubling needs two distinct nodes")
    n = graph.n
    labels = [2 * lab for lab in graph.labels] + [2 * lab + 1 for lab in graph.labels]
    edges = []
    for copy in (0, 1):
        off = copy * n
        edges.extend((a + off, pa, b + off, pb) for a, pa, b, pb in graph.edges())
    f_port = graph.degree(w)
    edges.append((w, f_port, w + n, f_port))
    return PortLabeledGraph.from_edges(labels, edges), v, v + n


# -- random instances -------------------------------------------------------

def _prufer_tree(n: int, rng: random.Random) -> list[tuple[int, int]]:
    if n == 1:
        return []
    if n == 2:
        return [(0, 1)]
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = next(i for i in range(n) if degree[i] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, w = (i for i in range(n) if degree[i] == 1)
    edges.append((u, w))
    return edges


def _assign_ports(n: int, pairs: list[tuple[int, int]], rng: random.Random) -> PortLabeledGraph:
    incident: list[list[int]] = [[] for _ in range(n)]
    for a, b in pairs:
        incident[a].append(b)
        incident[b].append(a)
    port_of: list[dict[int, int]] = []
    for v in range(n):
        nbrs = sorted(incident[v])
        rng.shuffle(nbrs)
        port_of.append({u: p for p, u in enumerate(nbrs)})
    edges = [(a, port_of[a][b], b, port_of[b][a]) for a, b in pairs]
    return PortLabeledGraph.from_edges(list(range(n)), edges)


def random_connected_graph(n: int, e: int, seed: int) -> PortLabeledGraph:
    """Random spanning tree (via a Prufer sequence) plus ``e-n+1`` extra edges,
    with a random port permutation at every node."""
    if n < 1 or not n - 1 <= e <= n * (n - 1) // 2:
        raise GraphError(f"no simple connected graph with n={n}, e={e}")
    rng = random.Random(seed)
    pairs = [tuple(sorted(p)) for p in _prufer_tree(n, rng)]
    present = set(pairs)
    extra = e - (n - 1)
    free = n * (n - 1) // 2 - len(present)
    if extra and 2 * extra > free:
        candidates = [p for p in itertools.combinations(range(n), 2) if p not in present]
        added = rng.sample(candidates, extra)
    else:
        added = []
        while len(added) < extra:
            a, b = sorted(rng.sample(range(n), 2))
            if (a, b) not in present:
                present.add((a, b))
                added.append((a, b))
    return _assign_ports(n, pairs + sorted(added), rng)


def random_tree(n: int, seed: int) -> PortLabeledGraph:
    return random_connected_graph(n, n - 1, seed)


# -- text format ------------------------------------------------------------

def dump_graph(graph: PortLabeledGraph) -> str:
    lines = ["graph-v1", f"nodes {graph.n}"]
    lines += [f"node {v} {lab}" for v, lab in enumerate(graph.labels)]
    lines += [f"edge {u} {pu} {v} {pv}" for u, pu, v, pv in graph.edges()]
    return "\n".join(lines) + "\n"


def dump_instance(graph: PortLabeledGraph, start: int, treasure: int) -> str:
    return dump_graph(graph) + f"start {start}\ntreasure {treasure}\n"


@dataclass
class Instance:
    graph: Optional[PortLabeledGraph]
    start: Optional[int] = None
    treasure: Optional[int] = None


def _ints(parts: list[str], count: int, lineno: int) -> list[int]:
    if len(parts) != count + 1:
        raise GraphError(f"'{parts[0]}' takes {count} integer field(s)", lineno)
    try:
        return [int(x) for x in parts[1:]]
    except ValueError:
        raise GraphError(f"non-integer field in '{' '.join(parts)}'", lineno) from None


def parse_instance(text: str) -> Instance:
    """Parse graph and/or instance lines; the graph part is optional so that
    a start/treasure file can accompany a separate graph file."""
    header_seen = False
    n: Optional[int] = None
    labels: dict[int, int] = {}
    edges: list[tuple[int, int, int, int]] = []
    used_ports: set[tuple[int, int]] = set()
    inst = Instance(None)
    last_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        last_line = lineno
        parts = line.split()
        key = parts[0]
        if key == "graph-v1":
            if header_seen:
                raise GraphError("duplicate graph-v1 header", lineno)
            header_seen = True
        elif key in ("nodes", "node", "edge") and not header_seen:
            raise GraphError(f"'{key}' before graph-v1 header", lineno)
        elif key == "nodes":
            if n is not None:
                raise GraphError("duplicate 'nodes' line", lineno)
            (n,) = _ints(parts, 1, lineno)
            if n < 1:
                raise GraphError("graph needs at least one node", lineno)
        elif key == "node":
            if n is None:
                raise GraphError("'node' before 'nodes'", lineno)
            idx, lab = _ints(parts, 2, lineno)
            if not 0 <= idx < n:
                raise GraphError(f"node index {idx} out of range", lineno)
            if idx in labels:
                raise GraphError(f"node {idx} declared twice", lineno)
            labels[idx] = lab
        elif key == "edge":
            if n is None:
                raise GraphError("'edge' before 'nodes'", lineno)
            u, pu, v, pv = _ints(parts, 4, lineno)
            for node, port in ((u, pu), (v, pv)):
                if not 0 <= node < n:
                    raise GraphError(f"node index {node} out of range", lineno)
                if port < 0 or (node, port) in used_ports:
                    raise GraphError(f"port {port} at node {node} invalid or used twice", lineno)
                used_ports.add((node, port))
            edges.append((u, pu, v, pv))
        elif key == "start":
            (inst.start,) = _ints(parts, 1, lineno)
        elif key == "treasure":
            (inst.treasure,) = _ints(parts, 1, lineno)
        else:
            raise GraphError(f"unknown directive '{key}'", lineno)

    if header_seen:
        if n is None:
            raise GraphError("missing 'nodes' line", last_line)
        if len(labels) != n:
            missing = min(set(range(n)) - set(labels))
            raise GraphError(f"node {missing} has no 'node' line", last_line)
        graph = PortLabeledGraph.from_edges([labels[i] for i in range(n)], edges)
        problems = validate(graph)
        if problems:
            raise GraphError(f"{problems[0].kind} violation: {problems[0].detail}", last_line)
        inst.graph = graph
        for name in ("start", "treasure"):
            idx = getattr(inst, name)
            if idx is not None and not 0 <= idx < n:
                raise GraphError(f"{name} index {idx} out of range", last_line)
    return inst


def load_graph(text: str) -> PortLabeledGraph:
    inst = parse_instance(text)
    if inst.graph is None:
        raise GraphError("no graph-v1 section found")
    return inst.graph
