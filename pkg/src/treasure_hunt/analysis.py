"""Cost-bound calculators, counting oracles for the caterpillar lower-bound
family, and the advice/cost tradeoff sweep."""

from __future__ import annotations

import csv
import io
import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Literal, Optional, Sequence

from .agent import HuntOutcome, find_treasure
from .graph_core import PortLabeledGraph, caterpillar_specs, dump_graph, make_caterpillar
from .oracle import AdvicePlan, create_advice

FRACTION_BITS = 64
SWEEP_HEADER = ["ell", "advice_bits", "cost", "D", "e", "beta_num", "beta_den", "A_max", "bound", "holds", "found"]


def _iroot_floor(x: int, q: int) -> int:
    if x < 2 or q == 1:
        return x
    guess = 1 << -(-x.bit_length() // q)
    while True:
        nxt = ((q - 1) * guess + x // guess ** (q - 1)) // q
        if nxt >= guess:
            return guess
        guess = nxt


def iroot_ceil(x: int, q: int) -> int:
    r = _iroot_floor(x, q)
    return r if r ** q == x else r + 1


def power_upper(base: int, exponent: Fraction, frac_bits: int = FRACTION_BITS) -> Fraction:
    """Rational r >= base**exponent, within 2**-frac_bits of it."""
    if base < 1 or exponent < 0:
        raise ValueError("power_upper needs base >= 1 and exponent >= 0")
    p, q = exponent.numerator, exponent.denominator
    scaled = iroot_ceil(base ** p << (frac_bits * q), q)
    return Fraction(scaled, 1 << frac_bits)


def cost_bound(kind: Literal["general", "tree"], D: int, e: int, ell: int, logsum: int,
               A_max: int, constant: int = 16) -> Fraction:
    """Upper bound ``c*D*e^(1+beta)/2^A_max`` (general) or ``c*e^(1+beta)/2^A_max``
    (tree), with ``beta = ell/logsum < 1``.  Never below the real value."""
    if logsum <= 0 or not 0 <= ell < logsum:
        raise ValueError(f"bound needs 0 <= ell < logsum, got ell={ell}, logsum={logsum}")
    beta = Fraction(ell, logsum)
    core = constant * e * power_upper(e, beta) / (1 << A_max)
    if kind == "general":
        return D * core
    if kind == "tree":
        return core
    raise ValueError(f"unknown bound kind {kind!r}")


@dataclass
class BoundReport:
    D: int
    e: int
    ell: int
    beta: Fraction
    A_max: int
    measured_cost: int
    bound_general: Optional[Fraction]
    bound_tree: Optional[Fraction]
    holds_general: bool
    holds_tree: bool
    holds_general_8: bool
    holds_tree_8: bool


def bound_report(graph: PortLabeledGraph, plan: AdvicePlan, outcome: HuntOutcome) -> BoundReport:
    """Compare a measured hunt against the bounds; with full advice only the
    exact-cost claim applies and the bound fields are None."""
    e, cost = graph.num_edges, outcome.cost
    args = (plan.D, e, plan.ell, plan.logsum, plan.max_substring_length)
    if plan.beta == 1:
        exact = cost == plan.D
        return BoundReport(plan.D, e, plan.ell, plan.beta, plan.max_substring_length, cost,
                           None, None, exact, exact, exact, exact)
    general = cost_bound("general", *args)
    is_tree = graph.is_tree()
    tree = cost_bound("tree", *args) if is_tree else None
    return BoundReport(
        plan.D, e, plan.ell, plan.beta, plan.max_substring_length, cost, general, tree,
        cost <= general, (not is_tree) or cost <= tree,
        cost <= cost_bound("general", *args, constant=8),
        (not is_tree) or cost <= cost_bound("tree", *args, constant=8),
    )


# -- counting oracles -------------------------------------------------------

@dataclass(frozen=True)
class TupleCount:
    D: int
    M: int
    exact_count: int
    simplex_bound: Fraction

    @property
    def within_bound(self) -> bool:
        return self.M < 1 or self.exact_count <= self.simplex_bound


def count_tuples_bruteforce(D: int, M: int) -> TupleCount:
    """Count nonnegative integer D-tuples with sum <= M by enumeration and
    check the count against the stars-and-bars binomial."""
    if not (1 <= D <= 5 and 0 <= M <= 10):
        raise ValueError(f"enumeration budget is D in 1..5, M in 0..10; got D={D}, M={M}")
    count = sum(1 for t in itertools.product(range(M + 1), repeat=D) if sum(t) <= M)
    binom = math.comb(M + D, D)
    if count != binom:
        raise AssertionError(f"enumeration gave {count}, binomial gives {binom}")
    result = TupleCount(D, M, count, Fraction((6 * M) ** D, math.factorial(D)))
    if not result.within_bound:
        raise AssertionError(f"{count} tuples exceed (6M)^D/D! = {result.simplex_bound}")
    return result


def caterpillar_census(D: int, k: int) -> int:
    """Number of distinct labeled caterpillars for (D, k), by building every
    port sequence and deduplicating serializations."""
    if k ** D > 10 ** 5:
        raise ValueError(f"k^D = {k ** D} exceeds the census budget")
    seen = {dump_graph(make_caterpillar(spec)[0]) for spec in caterpillar_specs(D, k)}
    if len(seen) != k ** D:
        raise AssertionError(f"census found {len(seen)} trees, expected {k ** D}")
    return len(seen)


# -- misses -----------------------------------------------------------------

@dataclass(frozen=True)
class MissCheck:
    holds: bool
    cost: int
    D: int
    total_misses: int


def miss_decomposition(outcome: HuntOutcome, D: int) -> MissCheck:
    """On a caterpillar, a successful walk costs D plus two per miss."""
    if len(outcome.per_level_misses) != D:
        raise ValueError("outcome carries no per-level misses for this D; pass reference_path")
    total = sum(outcome.per_level_misses)
    return MissCheck(outcome.found and outcome.cost == D + 2 * total, outcome.cost, D, total)


# -- sweep ------------------------------------------------------------------

@dataclass(frozen=True)
class SweepRow:
    ell: int
    advice_bits: int
    cost: int
    D: int
    e: int
    beta: Fraction
    A_max: int
    bound: Fraction
    holds: bool
    found: bool

    def csv_fields(self) -> list[object]:
        return [self.ell, self.advice_bits, self.cost, self.D, self.e, self.beta.numerator,
                self.beta.denominator, self.A_max, math.ceil(self.bound), int(self.holds), int(self.found)]


def _sweep_row(args: tuple[PortLabeledGraph, int, int, int]) -> SweepRow:
    graph, s, treasure, ell = args
    plan = create_advice(graph, s, treasure, ell)
    outcome = find_treasure(graph, s, treasure, plan.encoded)
    kind = "tree" if graph.is_tree() else "general"
    if plan.beta == 1:
        bound = Fraction(plan.D)
    else:
        bound = cost_bound(kind, plan.D, graph.num_edges, plan.ell, plan.logsum, plan.max_substring_length)
    return SweepRow(ell, len(plan.encoded), outcome.cost, plan.D, graph.num_edges, plan.beta,
                    plan.max_substring_length, bound, outcome.cost <= bound, outcome.found)


def sweep(graph: PortLabeledGraph, s: int, treasure: int,
          ell_values: Optional[Iterable[int]] = None, jobs: int = 1) -> list[SweepRow]:
    """One row per budget, ordered by ell; full advice is always included as
    the last row."""
    logsum = create_advice(graph, s, treasure, 0).logsum
    ells = sorted(set(range(logsum + 1) if ell_values is None else ell_values) | {logsum})
    if ells[0] < 0 or ells[-1] > logsum:
        raise ValueError(f"ell values must lie in 0..{logsum}")
    work = [(graph, s, treasure, ell) for ell in ells]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_sweep_row, work))
    return [_sweep_row(w) for w in work]


def sweep_csv(rows: Sequence[SweepRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SWEEP_HEADER)
    for row in rows:
        writer.writerow(row.csv_fields())
    return buf.getvalue()
