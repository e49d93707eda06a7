"""Instance supply and independent oracles shared by the test modules."""

from __future__ import annotations

import math
import random
import re
import sys
from fractions import Fraction

from treasure_hunt.graph_core import PortLabeledGraph, random_connected_graph, random_tree


def random_instance(seed: int, max_n: int, tree: bool, edge_factor: int = 3):
    """(graph, start, treasure) with distinct start and treasure when n >= 2."""
    rng = random.Random(f"inst-{seed}-{tree}-{max_n}")
    n = rng.randint(2, max_n)
    if tree:
        graph = random_tree(n, seed)
    else:
        e = rng.randint(n - 1, min(n * (n - 1) // 2, edge_factor * n))
        graph = random_connected_graph(n, e, seed)
    s, t = rng.sample(range(n), 2)
    return graph, s, t


def all_simple_path_lengths(graph: PortLabeledGraph, s: int, t: int) -> list[int]:
    """Brute-force enumeration of every simple s->t path length."""
    out = []

    def go(v, seen, length):
        if v == t:
            out.append(length)
            return
        for w, _ in graph.adjacency[v]:
            if w not in seen:
                go(w, seen | {w}, length + 1)

    go(s, {s}, 0)
    return out


def naive_decode(bits: str):
    pairs = [bits[i:i + 2] for i in range(0, len(bits), 2)]
    text = "".join({"00": "0", "11": "1", "01": "|"}[p] for p in pairs)
    fields = text.split("|")
    return fields[:-1], fields[-1]


def naive_hunt(graph: PortLabeledGraph, s: int, treasure: int, advice: str):
    """Literal recursive transcription of the TakeStep pseudocode.

    Returns (found, moves) with moves as (node, port, 'F'|'B').  Uses Python
    recursion, float logarithms and Fraction arithmetic, sharing nothing with
    the package implementation beyond the graph object.
    """
    moves = []
    table = {}
    subs, ls = naive_decode(advice)
    D = len(subs)

    class Found(Exception):
        pass

    def take_step(v, i, prev_port):
        if v == treasure:
            raise Found
        if i < D and i < table.get(v, math.inf):
            table[v] = i
            A, LS = naive_decode(advice)
            ell = sum(len(a) for a in A)
            logsum = int(LS, 2) if LS else 0
            deg = len(graph.adjacency[v])
            clog = math.ceil(math.log2(deg))
            if clog == 0:
                expected = 0
            elif logsum == 0:
                expected = None
            else:
                expected = math.floor(clog * Fraction(ell, logsum))
            if len(A[i]) == expected:
                z = len(A[i])
                size = math.ceil(Fraction(deg, 2 ** z))
                number = int(A[i], 2) if A[i] else 0
                for p in range(number * size, (number + 1) * size):
                    if p < deg:
                        w, back = graph.adjacency[v][p]
                        moves.append((v, p, "F"))
                        take_step(w, i + 1, back)
        if prev_port is not None:
            moves.append((v, prev_port, "B"))

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 10000))
    try:
        take_step(s, 0, None)
        return False, moves
    except Found:
        return True, moves
    finally:
        sys.setrecursionlimit(limit)


def random_bits(rng: random.Random, n: int) -> str:
    return "".join(rng.choice("01") for _ in range(n))


def is_well_formed(bits: str) -> bool:
    return len(bits) % 2 == 0 and re.fullmatch(r"(00|11|01)*", bits) is not None
