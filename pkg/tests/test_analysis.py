import math
import random
from fractions import Fraction

import mpmath
import pytest

from treasure_hunt.agent import BACKTRACK, FORWARD, HuntOutcome, Move, find_treasure
from treasure_hunt.analysis import (
    SWEEP_HEADER,
    caterpillar_census,
    cost_bound,
    count_tuples_bruteforce,
    iroot_ceil,
    miss_decomposition,
    power_upper,
    sweep,
    sweep_csv,
)
from treasure_hunt.graph_core import CaterpillarSpec, make_caterpillar
from helpers import random_instance
from treasure_hunt.oracle import create_advice


def test_iroot_ceil():
    assert iroot_ceil(27, 3) == 3
    assert iroot_ceil(28, 3) == 4
    assert iroot_ceil(1, 7) == 1
    for x in range(1, 2000):
        for q in (1, 2, 3, 5):
            r = iroot_ceil(x, q)
            assert r ** q >= x > (r - 1) ** q


def test_bound_edge_cases():
    assert cost_bound("general", 3, 10, 0, 5, 0) == 16 * 3 * 10
    assert cost_bound("tree", 3, 10, 0, 5, 0) == 16 * 10
    assert cost_bound("general", 2, 4, 1, 2, 1) == Fraction(16 * 2 * 4 * 2, 2)
    with pytest.raises(ValueError):
        cost_bound("general", 3, 10, 5, 5, 0)


def test_bound_never_under_reports():
    rng = random.Random(1)
    mpmath.mp.prec = 256
    for _ in range(1000):
        logsum = rng.randint(1, 400)
        ell = rng.randint(0, logsum - 1)
        e, D, a_max = rng.randint(1, 5000), rng.randint(1, 100), rng.randint(0, 12)
        exact = 16 * D * mpmath.power(e, 1 + mpmath.mpf(ell) / logsum) / 2 ** a_max
        got = cost_bound("general", D, e, ell, logsum, a_max)
        assert mpmath.mpf(got.numerator) / got.denominator >= exact
        # and stays within the 64-bit rounding slack
        slack = 16 * D * e * mpmath.mpf(2) ** -64 / 2 ** a_max
        assert mpmath.mpf(got.numerator) / got.denominator - exact <= slack * 2


def test_power_upper_exact_roots():
    assert power_upper(16, Fraction(1, 2)) == 4
    assert power_upper(7, Fraction(0)) == 1


@pytest.mark.parametrize("D,M,count", [(2, 2, 6), (1, 0, 1), (3, 4, 35)])
def test_tuple_counts(D, M, count):
    res = count_tuples_bruteforce(D, M)
    assert res.exact_count == count


def test_tuple_bound_values():
    assert count_tuples_bruteforce(2, 2).simplex_bound == 72
    assert count_tuples_bruteforce(3, 4).simplex_bound == 2304
    with pytest.raises(ValueError):
        count_tuples_bruteforce(6, 3)


@pytest.mark.parametrize("D,k,expected", [(2, 3, 9), (1, 2, 2), (3, 4, 64)])
def test_census(D, k, expected):
    assert caterpillar_census(D, k) == expected


def test_census_budget():
    with pytest.raises(ValueError):
        caterpillar_census(9, 5)


def test_miss_decomposition_runs():
    for ports in [(1, 2), (0, 3), (2, 0)]:
        g, s, t = make_caterpillar(CaterpillarSpec(2, 3, ports))
        for ell in range(create_advice(g, s, t, 0).logsum + 1):
            plan = create_advice(g, s, t, ell)
            out = find_treasure(g, s, t, plan.encoded, reference_path=plan.path)
            check = miss_decomposition(out, 2)
            assert check.holds
            if plan.beta == 1:
                assert check.total_misses == 0 and out.cost == 2


def test_miss_decomposition_hand_trace():
    g, s, t = make_caterpillar(CaterpillarSpec(2, 3, (1, 2)))
    # v_0 -> leaf via port 0, back, then along the spine
    trace = [Move(0, 0, FORWARD), Move(3, 0, BACKTRACK), Move(0, 1, FORWARD), Move(1, 2, FORWARD)]
    out = HuntOutcome(True, 4, trace, t, [1, 0])
    check = miss_decomposition(out, 2)
    assert check.holds and check.cost == 2 + 2


@pytest.mark.parametrize("seed", range(10))
def test_sweep(seed):
    graph, s, t = random_instance(seed, 40, tree=seed % 2 == 0)
    rows = sweep(graph, s, t)
    assert [r.ell for r in rows] == sorted(r.ell for r in rows)
    assert rows[-1].cost == rows[-1].D
    assert all(r.found and r.holds and r.cost >= r.D for r in rows)
    text = sweep_csv(rows)
    assert text.splitlines()[0] == ",".join(SWEEP_HEADER)
    assert len(text.splitlines()) == len(rows) + 1


def test_sweep_parallel_matches_serial():
    graph, s, t = random_instance(7, 40, tree=False)
    assert sweep(graph, s, t, jobs=2) == sweep(graph, s, t)
