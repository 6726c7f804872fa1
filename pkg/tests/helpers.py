"""Shared builders and hypothesis strategies for the test suite."""

from __future__ import annotations

from hypothesis import strategies as st

from monvnum import AmbientRing, Graph, Monomial, MonomialIdeal, MonomialPrime, edge_ideal
from monvnum.cli import parse_ideal

XYZ = AmbientRing(["x", "y", "z"])
XYZW = AmbientRing(["x", "y", "z", "w"])


def ideal(text: str, ring: AmbientRing = XYZ) -> MonomialIdeal:
    return parse_ideal(text, ring)


def mono(ring: AmbientRing, **powers: int) -> Monomial:
    return ring.monomial(**powers)


def prime(ring: AmbientRing, names: str) -> MonomialPrime:
    return MonomialPrime.from_names(ring, names.split(",") if names else [])


def primes(ring: AmbientRing, *groups: str) -> set[MonomialPrime]:
    return {prime(ring, g) for g in groups}


def cycle_ideal(n: int) -> MonomialIdeal:
    return edge_ideal(Graph.cycle(n))


C3 = ideal("x*y, y*z, x*z")


def rings(max_n: int = 4):
    return st.integers(1, max_n).map(lambda n: AmbientRing([f"x{i}" for i in range(1, n + 1)]))


def exponents(n: int, max_exp: int = 3, nonzero: bool = False):
    vec = st.tuples(*[st.integers(0, max_exp)] * n)
    return vec.filter(any) if nonzero else vec


def monomials(ring: AmbientRing, max_exp: int = 3):
    return exponents(ring.n, max_exp).map(lambda e: Monomial(ring, e))


@st.composite
def proper_ideals(draw, max_n: int = 4, max_exp: int = 3, max_gens: int = 4, ring=None):
    ring = ring or draw(rings(max_n))
    gens = draw(st.lists(exponents(ring.n, max_exp, nonzero=True), min_size=1, max_size=max_gens))
    return MonomialIdeal.from_exponents(ring, gens)


@st.composite
def ideal_with_monomial(draw, max_n: int = 4, max_exp: int = 3):
    I = draw(proper_ideals(max_n=max_n, max_exp=max_exp))
    return I, draw(monomials(I.ring, max_exp))


@st.composite
def disjoint_pairs(draw, max_side: int = 3, max_gens: int = 3, max_exp: int = 2):
    """(I, J) on blocks x1..xa and y1..yb of one ring."""
    a = draw(st.integers(1, max_side))
    b = draw(st.integers(1, max_side))
    ring = AmbientRing([f"x{i}" for i in range(1, a + 1)] + [f"y{i}" for i in range(1, b + 1)])
    ga = draw(st.lists(exponents(a, max_exp, nonzero=True), min_size=1, max_size=max_gens))
    gb = draw(st.lists(exponents(b, max_exp, nonzero=True), min_size=1, max_size=max_gens))
    I = MonomialIdeal.from_exponents(ring, [e + (0,) * b for e in ga])
    J = MonomialIdeal.from_exponents(ring, [(0,) * a + e for e in gb])
    return I, J
