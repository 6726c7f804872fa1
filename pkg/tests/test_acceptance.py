"""Acceptance gate: ten criteria, each reported as one PASS/FAIL line.

Every criterion is a cached computation returning ``(ok, detail, records)``
where ``records`` lists every ``(ideal, k, v)`` value it computed directly;
criterion 9 re-checks the lower bound over all of them.  The lines are
printed in pytest's terminal summary (see conftest.py) and by running this
file as a script.
"""

from __future__ import annotations

import random
import time
from functools import cache

import pytest

from monvnum import (
    AmbientRing,
    Graph,
    MonomialPrime,
    Node,
    alpha,
    ass,
    ass_power,
    ass_product,
    ass_sum_power,
    ci_ass,
    ci_v,
    edge_ideal,
    graph_component_count,
    ideal_sum,
    oracle_ass,
    oracle_v_local,
    power,
    product,
    support,
    v_function,
    v_local_all,
    v_number,
    v_product,
    v_product_local,
    v_sum,
    v_sum_local,
    vertex_split,
    vertex_splittable_v,
)
from monvnum.cli import parse_ideal
from monvnum.corpus import (
    random_complete_intersection,
    random_disjoint_pair,
    random_ideal,
    splittable_family,
)
from monvnum.structure import validate_split_tree

RESULTS: dict[int, tuple[bool, str]] = {}


def _record(n: int, ok: bool, detail: str) -> None:
    RESULTS[n] = (ok, detail)
    print(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


def _table_records(I, table):
    return [(I, k, v) for k, (v, _) in table.per_k.items()]


def _split_prime(P, I):
    """Parts of P inside I's block and outside it (None when empty)."""
    block = support(I)
    a = tuple(i for i in P.variables if i in block)
    b = tuple(i for i in P.variables if i not in block)
    return (MonomialPrime(P.ring, a) if a else None, MonomialPrime(P.ring, b) if b else None)


@cache
def criterion_1():
    t0 = time.perf_counter()
    I = edge_ideal(Graph.cycle(5))
    table = v_function(I, 5)
    want = [2] + [2 * k - 1 for k in range(2, 6)]
    f = table.fit
    ok_fit = f is not None and f.vstab == 2 and (f.slope, f.intercept) == (2, -1)
    elapsed = time.perf_counter() - t0
    ok = table.values == want and ok_fit and elapsed < 60
    return ok, f"C5 values {table.values}, vstab {f and f.vstab}, {elapsed:.1f}s", _table_records(I, table)


@cache
def criterion_2():
    t0 = time.perf_counter()
    graphs = {
        "C3+edge": Graph.from_edges([("a", "b"), ("b", "c"), ("a", "c"), ("d", "e")]),
        "C3+C3+edge": Graph.from_edges(
            [("a", "b"), ("b", "c"), ("a", "c"), ("d", "e"), ("e", "f"), ("d", "f"), ("g", "h")]
        ),
    }
    ok, notes, records = True, [], []
    for name, G in graphs.items():
        c = graph_component_count(G)
        I = edge_ideal(G)
        table = v_function(I, 6)
        records += _table_records(I, table)
        f = table.fit
        good = f is not None and (f.slope, f.intercept) == (2, c - 2) and f.vstab <= 4
        ok &= good
        notes.append(f"{name}: {table.values} fit {f and (f.slope, f.intercept, f.vstab)}")
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 300
    return ok, "; ".join(notes) + f", {elapsed:.1f}s", records


def _fifteen_variable_pair():
    ring = AmbientRing([f"{c}{i}" for c in "xyz" for i in range(1, 6)])
    I1 = edge_ideal(Graph.cycle(5, "x"), ring)
    J = edge_ideal(Graph.cycle(5, "y"), ring)
    L = edge_ideal(Graph.cycle(5, "z"), ring)
    return I1, J, L


@cache
def criterion_3():
    t0 = time.perf_counter()
    I1, J, L = _fifteen_variable_pair()
    I2 = product(J, L)
    values = {k: v_sum(I1, I2, k, v_power_j=lambda m: v_product(J, L, m)) for k in (2, 3, 4)}
    S = ideal_sum(I1, I2)
    direct = v_number(power(S, 2))[0]
    elapsed = time.perf_counter() - t0
    ok = all(v == 2 * k + 3 for k, v in values.items()) and direct == values[2] and elapsed < 600
    records = [(S, k, v) for k, v in values.items()] + [(S, 2, direct)]
    return ok, f"v_sum {values}, direct k=2 {direct}, {elapsed:.1f}s", records


@cache
def criterion_4():
    I = parse_ideal("ring x1 x2 x3\nx1^2, x1*x2, x1*x3^2, x3^3")
    tree = vertex_split(I)
    tree_ok = (
        isinstance(tree, Node)
        and tree.variable_name == "x1"
        and tree.left.ideal == parse_ideal("x1, x2, x3^2", I.ring)
        and tree.right.ideal == parse_ideal("x3^3", I.ring)
        and validate_split_tree(tree)
    )
    table = v_function(I, 6)
    tail_ok = all(table.per_k[k][0] == 2 * k for k in range(2, 7))
    f = table.fit
    fit_ok = f is not None and (f.slope, f.intercept) == (2, 0)
    return tree_ok and tail_ok and fit_ok, f"tree ok {tree_ok}, values {table.values}", _table_records(I, table)


@cache
def criterion_5():
    rng = random.Random(2024)
    bad, records = [], []
    for _ in range(50):
        I = random_complete_intersection(rng, n_max=8, mu_max=4, deg_max=4)
        predicted = ci_ass(I)
        for k in range(1, 5):
            P = power(I, k)
            v = v_number(P)[0]
            records.append((I, k, v))
            if ass_power(I, k) != predicted or v != ci_v(I, k):
                bad.append(f"{I} k={k}")
    return not bad, f"50 complete intersections, {len(bad)} discrepancies {bad[:3]}", records


@cache
def criterion_6():
    rng = random.Random(606)
    bad, records = [], []
    for _ in range(50):
        I, J = random_disjoint_pair(rng, n_max=4, max_gens=4, max_deg=3)
        for k in range(1, 4):
            P = power(product(I, J), k)
            direct_ass = ass(P)
            if ass_product(I, J, k) != direct_ass or direct_ass != ass_power(I, k) | ass_power(J, k):
                bad.append(f"ass {I} * {J} k={k}")
            local = v_local_all(P)
            for p, v in local.items():
                if v_product_local(I, J, p, k) != v:
                    bad.append(f"v_{p} {I} * {J} k={k}")
            v = min(local.values())
            records.append((product(I, J), k, v))
            if v_product(I, J, k) != v:
                bad.append(f"v {I} * {J} k={k}")
    return not bad, f"50 disjoint products, {len(bad)} discrepancies {bad[:3]}", records


@cache
def criterion_7():
    rng = random.Random(707)
    bad, records = [], []
    for _ in range(50):
        I, J = random_disjoint_pair(rng, n_max=4, max_gens=4, max_deg=3)
        S = ideal_sum(I, J)
        for k in range(1, 4):
            P = power(S, k)
            direct_ass = ass(P)
            if ass_sum_power(I, J, k) != direct_ass:
                bad.append(f"ass {I} + {J} k={k}")
            local = v_local_all(P)
            for PP, v in local.items():
                p, q = _split_prime(PP, I)
                if p is None or q is None or v_sum_local(I, J, p, q, k) != v:
                    bad.append(f"v_{PP} {I} + {J} k={k}")
            v = min(local.values())
            records.append((S, k, v))
            if v_sum(I, J, k) != v:
                bad.append(f"v {I} + {J} k={k}")
            if k == 1 and v != v_number(I)[0] + v_number(J)[0]:
                bad.append(f"k=1 additivity {I} + {J}")
    return not bad, f"50 disjoint sums, {len(bad)} discrepancies {bad[:3]}", records


@cache
def criterion_8():
    t0 = time.perf_counter()
    rng = random.Random(808)
    bad, records = [], []
    for _ in range(100):
        I = random_ideal(rng, n_max=5, max_exp=3, max_gens=5)
        fast = ass(I)
        if set(fast) != set(oracle_ass(I)):
            bad.append(f"ass {I}")
            continue
        local = v_local_all(I)
        for p, v in local.items():
            if oracle_v_local(I, p) != v:
                bad.append(f"v_{p} {I}")
        records.append((I, 1, min(local.values())))
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 600
    return ok, f"100 random ideals, {len(bad)} discrepancies {bad[:3]}, {elapsed:.1f}s", records


@cache
def criterion_10():
    bad, records = [], []
    family = splittable_family(n_max=4, d_max=3, complete_max=5)
    for I in family:
        if vertex_split(I) is None:
            bad.append(f"not split {I}")
            continue
        for k in range(1, 5):
            v = v_number(power(I, k))[0]
            records.append((I, k, v))
            if v != alpha(I) * k - 1 or v != vertex_splittable_v(I, k):
                bad.append(f"{I} k={k}: {v}")
    return not bad, f"{len(family)} splittable ideals, {len(bad)} discrepancies {bad[:3]}", records


@cache
def criterion_9():
    records = []
    for fn in (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8):
        records += fn()[2]
    violations = [(str(I), k, v) for I, k, v in records if v < alpha(I) * k - 1]
    return not violations, f"{len(records)} values checked, {len(violations)} violations {violations[:3]}", records


CRITERIA = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
    10: criterion_10,
}


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n):
    ok, detail, _ = CRITERIA[n]()
    _record(n, ok, detail)
    assert ok, detail


if __name__ == "__main__":
    for n in sorted(CRITERIA):
        ok, detail, _ = CRITERIA[n]()
        _record(n, ok, detail)
