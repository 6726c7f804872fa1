"""Brute-force associated primes and v-numbers by witness enumeration.

Every witness can be taken among the divisors of lcm(G(I)): raising an
exponent a_i past M_i = max exponent of x_i over G(I) leaves each
max(u_i - a_i, 0) at 0, so (I : f) does not change.  Enumerating divisors
by increasing degree therefore finds a minimum-degree witness for every
associated prime.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import prod

from .core import (
    Monomial,
    MonomialIdeal,
    MonomialPrime,
    _colon_mono_gens,
    _require_proper,
    _same_ring,
    colon_monomial,
    lcm_gens,
)
from .errors import BudgetExceededError, NotAssociatedError

DEFAULT_BUDGET = 2_000_000


@dataclass(frozen=True)
class WitnessRecord:
    ideal: MonomialIdeal
    prime: MonomialPrime
    witness: Monomial

    def __post_init__(self):
        if colon_monomial(self.ideal, self.witness) != self.prime.to_ideal():
            raise ValueError(f"({self.ideal} : {self.witness}) is not {self.prime}")

    @property
    def degree(self) -> int:
        return self.witness.degree


def _prime_of_colon(gens) -> tuple[int, ...] | None:
    idx = []
    for g in gens:
        if sum(g) != 1:
            return None
        idx.append(g.index(1))
    return tuple(idx) if idx else None


def divisors_by_degree(m: Monomial, budget: int = DEFAULT_BUDGET) -> list[tuple[int, ...]]:
    count = prod(a + 1 for a in m.exponents)
    if count > budget:
        raise BudgetExceededError(f"{count} divisors of {m} exceed the budget {budget}")
    divs = list(product(*(range(a + 1) for a in m.exponents)))
    divs.sort(key=lambda e: (sum(e), e))
    return divs


def oracle_ass(I: MonomialIdeal, budget: int = DEFAULT_BUDGET) -> dict[MonomialPrime, WitnessRecord]:
    """One minimum-degree witness per associated prime, keyed by prime."""
    _require_proper(I)
    found: dict[tuple[int, ...], tuple[int, ...]] = {}
    for f in divisors_by_degree(lcm_gens(I), budget):
        idx = _prime_of_colon(_colon_mono_gens(I.gens, f))
        if idx is not None and idx not in found:
            found[idx] = f
    out = {}
    for idx in sorted(found, key=lambda t: (len(t), t)):
        p = MonomialPrime(I.ring, idx)
        out[p] = WitnessRecord(I, p, Monomial(I.ring, found[idx]))
    return out


def oracle_v_local(I: MonomialIdeal, p: MonomialPrime, budget: int = DEFAULT_BUDGET) -> int:
    _require_proper(I)
    _same_ring(I.ring, p.ring)
    for f in divisors_by_degree(lcm_gens(I), budget):
        if _prime_of_colon(_colon_mono_gens(I.gens, f)) == p.variables:
            return sum(f)
    raise NotAssociatedError(f"no divisor of lcm(G(I)) realizes {p}")


def oracle_v(I: MonomialIdeal, budget: int = DEFAULT_BUDGET) -> int:
    _require_proper(I)
    for f in divisors_by_degree(lcm_gens(I), budget):
        if _prime_of_colon(_colon_mono_gens(I.gens, f)) is not None:
            return sum(f)
    raise AssertionError("a proper monomial ideal always has an associated prime")
