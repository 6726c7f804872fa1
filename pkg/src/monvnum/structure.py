"""Structural recognizers and closed-form evaluators."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product as cartesian
from typing import Iterable, Sequence, Union

from .assoc import PrimeSet, _disjoint_or_raise
from .core import (
    AmbientRing,
    Exps,
    MonomialIdeal,
    MonomialPrime,
    _contains,
    _mask,
    _minimalize,
    _require_proper,
    alpha,
    is_equigenerated,
    mu,
)
from .errors import HypothesisError, ImproperIdealError
from .vnumber import LinearFit

__all__ = [
    "Graph",
    "Leaf",
    "Node",
    "SplitTree",
    "VBound",
    "ci_ass",
    "ci_v",
    "ci_v_line",
    "components",
    "disjoint_sum_vbound",
    "edge_ideal",
    "edge_v_asymptotic",
    "graph_component_count",
    "is_complete_intersection",
    "is_equigenerated",
    "validate_split_tree",
    "vertex_split",
    "vertex_splittable_v",
]


# ---------------------------------------------------------------------------
# connected components


def components(I: MonomialIdeal) -> list[MonomialIdeal]:
    """Split I into connected pieces with pairwise disjoint supports."""
    _require_proper(I)
    parent = list(range(len(I.gens)))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    owner: dict[int, int] = {}
    for gi, g in enumerate(I.gens):
        for v, e in enumerate(g):
            if not e:
                continue
            if v in owner:
                ra, rb = find(owner[v]), find(gi)
                if ra != rb:
                    parent[rb] = ra
            else:
                owner[v] = gi
    groups: dict[int, list[Exps]] = {}
    for gi, g in enumerate(I.gens):
        groups.setdefault(find(gi), []).append(g)
    parts = [MonomialIdeal(I.ring, _minimalize(gs)) for gs in groups.values()]
    parts.sort(key=lambda J: min(i for g in J.gens for i, e in enumerate(g) if e))
    return parts


def is_complete_intersection(I: MonomialIdeal) -> bool:
    """Generators have pairwise disjoint supports."""
    _require_proper(I)
    seen = 0
    for g in I.gens:
        m = _mask(g)
        if seen & m:
            return False
        seen |= m
    return True


# ---------------------------------------------------------------------------
# graphs


@dataclass(frozen=True)
class Graph:
    vertices: tuple[str, ...]
    edges: frozenset[frozenset[str]]

    def __init__(self, vertices: Iterable[str], edges: Iterable[Sequence[str]]):
        vs = tuple(vertices)
        if len(set(vs)) != len(vs):
            raise ValueError("duplicate vertex names")
        es = set()
        known = set(vs)
        for e in edges:
            a, b = e
            if a == b:
                raise ValueError(f"loop at {a!r}")
            if a not in known or b not in known:
                raise ValueError(f"edge {a}-{b} uses an undeclared vertex")
            es.add(frozenset((a, b)))
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "edges", frozenset(es))

    @classmethod
    def from_edges(cls, edges: Iterable[Sequence[str]]) -> Graph:
        edges = [tuple(e) for e in edges]
        order: dict[str, None] = {}
        for a, b in edges:
            order.setdefault(a)
            order.setdefault(b)
        return cls(order, edges)

    @classmethod
    def cycle(cls, n: int, prefix: str = "x") -> Graph:
        names = [f"{prefix}{i}" for i in range(1, n + 1)]
        return cls(names, [(names[i], names[(i + 1) % n]) for i in range(n)])

    @classmethod
    def complete(cls, n: int, prefix: str = "x") -> Graph:
        names = [f"{prefix}{i}" for i in range(1, n + 1)]
        return cls(names, [(a, b) for i, a in enumerate(names) for b in names[i + 1 :]])

    def sorted_edges(self) -> list[tuple[str, str]]:
        pos = {v: i for i, v in enumerate(self.vertices)}
        out = [tuple(sorted(e, key=pos.__getitem__)) for e in self.edges]
        return sorted(out, key=lambda e: (pos[e[0]], pos[e[1]]))


def edge_ideal(G: Graph, ring: AmbientRing | None = None) -> MonomialIdeal:
    if not G.edges:
        raise ImproperIdealError("edgeless graph has the zero edge ideal")
    ring = ring or AmbientRing(G.vertices)
    gens = []
    for a, b in G.sorted_edges():
        e = [0] * ring.n
        e[ring.index(a)] = 1
        e[ring.index(b)] = 1
        gens.append(tuple(e))
    return MonomialIdeal(ring, _minimalize(gens))


def graph_component_count(G: Graph) -> int:
    """Number of connected components that contain at least one edge."""
    if not G.edges:
        raise ImproperIdealError("edgeless graph")
    parent = {v: v for e in G.edges for v in e}

    def find(a: str) -> str:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for e in G.edges:
        a, b = tuple(e)
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra
    return len({find(v) for v in parent})


def edge_v_asymptotic(G: Graph) -> tuple[int, int]:
    """Eventual line (slope, intercept) of k -> v(I(G)^k): 2k + c(G) - 2."""
    return 2, graph_component_count(G) - 2


# ---------------------------------------------------------------------------
# monomial complete intersections


def _require_ci(I: MonomialIdeal) -> None:
    if not is_complete_intersection(I):
        raise HypothesisError(f"{I} is not a complete intersection")


def ci_ass(I: MonomialIdeal) -> PrimeSet:
    """All primes obtained by picking one variable from each generator."""
    _require_ci(I)
    choices = [[i for i, e in enumerate(g) if e] for g in I.gens]
    return PrimeSet(MonomialPrime(I.ring, pick) for pick in cartesian(*choices))


def ci_v_line(I: MonomialIdeal) -> LinearFit:
    _require_ci(I)
    a = alpha(I)
    b = sum(sum(g) for g in I.gens) - a - mu(I)
    return LinearFit(a, b, 1, certified=True, source="complete intersection")


def ci_v(I: MonomialIdeal, k: int) -> int:
    """v(I^k) = alpha(I) k + (sum of generator degrees - alpha(I) - mu(I))."""
    if k < 1:
        raise ValueError("k must be positive")
    return ci_v_line(I)(k)


# ---------------------------------------------------------------------------
# vertex splittings


@dataclass(frozen=True)
class Leaf:
    ideal: MonomialIdeal


@dataclass(frozen=True)
class Node:
    """I = x_variable * left + right with right ⊆ left."""

    variable: int
    ideal: MonomialIdeal
    left: "SplitTree"
    right: "SplitTree"

    @property
    def variable_name(self) -> str:
        return self.ideal.ring.variables[self.variable]


SplitTree = Union[Leaf, Node]

def _is_leaf(gens: tuple[Exps, ...]) -> bool:
    # zero, unit or principal
    return len(gens) <= 1


def _ideal_contained(small: tuple[Exps, ...], big: tuple[Exps, ...]) -> bool:
    return all(_contains(big, g) for g in small)


@lru_cache(maxsize=8192)
def _split_raw(gens: tuple[Exps, ...], n: int):
    """Raw witness tree, or None when no vertex splitting exists.

    A raw node is ``(i, gens, left_raw, right_raw)``; a raw leaf is ``(gens,)``.
    """
    if _is_leaf(gens):
        return (gens,)
    for i in range(n):
        with_i = [g for g in gens if g[i]]
        if not with_i:
            continue
        left = _minimalize(g[:i] + (g[i] - 1,) + g[i + 1 :] for g in with_i)
        right = tuple(g for g in gens if not g[i])
        if not _ideal_contained(right, left):
            continue
        lt = _split_raw(left, n)
        if lt is None:
            continue
        rt = _split_raw(right, n)
        if rt is None:
            continue
        return (i, gens, lt, rt)
    return None


def _wrap(ring: AmbientRing, raw) -> SplitTree:
    if len(raw) == 1:
        return Leaf(MonomialIdeal(ring, raw[0]))
    i, gens, lt, rt = raw
    return Node(i, MonomialIdeal(ring, gens), _wrap(ring, lt), _wrap(ring, rt))


def vertex_split(I: MonomialIdeal) -> SplitTree | None:
    """Search for a vertex splitting tree; variables are tried in ring order."""
    raw = _split_raw(I.gens, I.ring.n)
    return None if raw is None else _wrap(I.ring, raw)


def validate_split_tree(tree: SplitTree) -> bool:
    """Recheck every node: x_i*left + right rebuilds the ideal, right ⊆ left,
    right avoids x_i and the generator sets are disjoint."""
    if isinstance(tree, Leaf):
        return len(tree.ideal.gens) <= 1
    i = tree.variable
    left, right = tree.left.ideal.gens, tree.right.ideal.gens
    shifted = tuple(g[:i] + (g[i] + 1,) + g[i + 1 :] for g in left)
    if any(g[i] for g in right):
        return False
    if set(shifted) & set(right):
        return False
    if _minimalize(shifted + right) != tree.ideal.gens:
        return False
    if set(_minimalize(shifted + right)) != set(shifted) | set(right):
        return False
    if not _ideal_contained(right, left):
        return False
    return validate_split_tree(tree.left) and validate_split_tree(tree.right)


def vertex_splittable_v(I: MonomialIdeal, k: int) -> int:
    """alpha(I) k - 1 for an equigenerated vertex splittable ideal."""
    _require_proper(I)
    if k < 1:
        raise ValueError("k must be positive")
    if not is_equigenerated(I):
        raise HypothesisError(f"{I} is not generated in a single degree")
    if vertex_split(I) is None:
        raise HypothesisError(f"{I} is not vertex splittable")
    return alpha(I) * k - 1


# ---------------------------------------------------------------------------
# lower bound for sums of ideals in disjoint variables


@dataclass(frozen=True)
class VBound:
    bound: int
    equality_certified: bool
    equality_regime: str | None  # "all k", "large k" or None
    hypothesis_certified: bool
    details: tuple[str, ...] = ()


def _vstab_one_certificate(I: MonomialIdeal) -> str | None:
    if is_complete_intersection(I) and ci_v_line(I).intercept == -1:
        return "complete intersection"
    if is_equigenerated(I) and vertex_split(I) is not None:
        return "equigenerated vertex splittable"
    return None


def disjoint_sum_vbound(
    ideals: Sequence[MonomialIdeal], k: int, check_window: Sequence[int] = (2, 3)
) -> VBound:
    """Lower bound (min alpha) k + (sum alpha - min alpha - t) for v((I_1+...+I_t)^k).

    Each part must satisfy v(I_j^k) = alpha(I_j) k - 1 eventually.  Parts
    with a structural certificate (a complete intersection whose closed
    form is alpha k - 1, or an equigenerated vertex splittable ideal)
    satisfy it for every k; the others are checked directly on
    ``check_window`` and the result is then heuristic.
    """
    from .core import power
    from .vnumber import v_number

    ideals = list(ideals)
    if len(ideals) < 2:
        raise ValueError("need at least two ideals")
    if k < 1:
        raise ValueError("k must be positive")
    for a in range(len(ideals)):
        for b in range(a + 1, len(ideals)):
            _disjoint_or_raise(ideals[a], ideals[b])
    certs = []
    details = []
    for j, I in enumerate(ideals):
        cert = _vstab_one_certificate(I)
        certs.append(cert)
        if cert is not None:
            details.append(f"part {j + 1}: vstab 1 ({cert})")
            continue
        for kk in check_window:
            v = v_number(power(I, kk))[0]
            if v != alpha(I) * kk - 1:
                raise HypothesisError(
                    f"part {j + 1}: v(I^{kk}) = {v} differs from alpha*k - 1 = {alpha(I) * kk - 1}"
                )
        details.append(f"part {j + 1}: hypothesis checked on k in {list(check_window)}")
    alphas = [alpha(I) for I in ideals]
    t = len(ideals)
    lo = min(alphas)
    bound = lo * k + (sum(alphas) - lo - t)
    all_vstab_one = all(c is not None for c in certs)
    if all_vstab_one:
        regime = "all k"
    elif len(set(alphas)) == 1:
        regime = "large k"
    else:
        regime = None
    return VBound(bound, regime is not None, regime, all_vstab_one, tuple(details))
