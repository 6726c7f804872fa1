"""Seeded random ideals shared by the ``verify`` subcommand and the test suites."""

from __future__ import annotations

import random
from itertools import combinations_with_replacement

from .core import AmbientRing, MonomialIdeal
from .structure import Graph, edge_ideal


def _nonzero_vector(rng: random.Random, n: int, max_exp: int) -> tuple[int, ...]:
    while True:
        e = tuple(rng.randint(0, max_exp) for _ in range(n))
        if any(e):
            return e


def _bounded_degree_vector(rng: random.Random, n: int, max_deg: int) -> tuple[int, ...]:
    d = rng.randint(1, max_deg)
    e = [0] * n
    for _ in range(d):
        e[rng.randrange(n)] += 1
    return tuple(e)


def random_ideal(
    rng: random.Random, n_max: int = 5, max_exp: int = 3, max_gens: int = 5
) -> MonomialIdeal:
    """Proper nonzero ideal in x1..xn, n <= n_max, exponents <= max_exp."""
    n = rng.randint(1, n_max)
    ring = AmbientRing([f"x{i}" for i in range(1, n + 1)])
    gens = [_nonzero_vector(rng, n, max_exp) for _ in range(rng.randint(1, max_gens))]
    return MonomialIdeal.from_exponents(ring, gens)


def random_disjoint_pair(
    rng: random.Random, n_max: int = 4, max_gens: int = 4, max_deg: int = 3
) -> tuple[MonomialIdeal, MonomialIdeal]:
    """Two ideals on disjoint variable blocks x1..xa and y1..yb of one ring."""
    a, b = rng.randint(1, n_max), rng.randint(1, n_max)
    ring = AmbientRing([f"x{i}" for i in range(1, a + 1)] + [f"y{i}" for i in range(1, b + 1)])

    def side(width: int, offset: int) -> MonomialIdeal:
        gens = []
        for _ in range(rng.randint(1, max_gens)):
            e = _bounded_degree_vector(rng, width, max_deg)
            full = [0] * ring.n
            full[offset : offset + width] = e
            gens.append(tuple(full))
        return MonomialIdeal.from_exponents(ring, gens)

    return side(a, 0), side(b, a)


def random_complete_intersection(
    rng: random.Random, n_max: int = 8, mu_max: int = 4, deg_max: int = 4
) -> MonomialIdeal:
    """Monomial complete intersection: generators with pairwise disjoint supports."""
    mu = rng.randint(1, mu_max)
    n = rng.randint(mu, n_max)
    ring = AmbientRing([f"x{i}" for i in range(1, n + 1)])
    free = list(range(n))
    rng.shuffle(free)
    gens = []
    for j in range(mu):
        # leave at least one variable for each generator still to come
        room = len(free) - (mu - j - 1)
        size = rng.randint(1, min(deg_max, room))
        chosen, free = free[:size], free[size:]
        e = [0] * n
        for i in chosen:
            e[i] = 1
        for _ in range(rng.randint(0, deg_max - size)):
            e[rng.choice(chosen)] += 1
        gens.append(tuple(e))
    return MonomialIdeal.from_exponents(ring, gens)


def random_graph(
    rng: random.Random, max_blocks: int = 3, block_max: int = 3, density: float = 0.6
) -> Graph:
    """Disjoint union of 1..max_blocks random blocks, each with at least one edge."""
    names: list[str] = []
    edges: list[tuple[str, str]] = []
    for _ in range(rng.randint(1, max_blocks)):
        block = [f"v{len(names) + i}" for i in range(1, rng.randint(2, block_max) + 1)]
        names += block
        pairs = [(a, b) for i, a in enumerate(block) for b in block[i + 1 :]]
        chosen = [e for e in pairs if rng.random() < density] or [rng.choice(pairs)]
        edges += chosen
    return Graph(names, edges)


def maximal_ideal_power(n: int, d: int) -> MonomialIdeal:
    ring = AmbientRing([f"x{i}" for i in range(1, n + 1)])
    gens = []
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        gens.append(tuple(e))
    return MonomialIdeal.from_exponents(ring, gens)


def splittable_family(n_max: int = 4, d_max: int = 3, complete_max: int = 5) -> list[MonomialIdeal]:
    """Powers m^d of maximal ideals and complete-graph edge ideals."""
    out = [maximal_ideal_power(n, d) for n in range(1, n_max + 1) for d in range(1, d_max + 1)]
    out += [edge_ideal(Graph.complete(n)) for n in range(2, complete_max + 1)]
    return out
