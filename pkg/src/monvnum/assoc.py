"""Associated primes of monomial ideals and of their powers.

A monomial prime p = (x_i : i in A) is associated to I exactly when the
monomial localization I(p) has a nonzero socle, i.e. (I(p) : p) != I(p).
Candidates are the subsets A of supp(I) that meet every generator's
support.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from .core import (
    Exps,
    MonomialIdeal,
    MonomialPrime,
    _mask,
    _minimalize,
    _require_proper,
    _same_ring,
    _substitute_one,
    power,
    support,
)
from .errors import SupportOverlapError

DEFAULT_K_MAX = 8
DEFAULT_WINDOW = 2


@dataclass(frozen=True)
class PrimeSet:
    primes: tuple[MonomialPrime, ...]

    def __init__(self, primes: Iterable[MonomialPrime] = ()):
        uniq = {p.variables: p for p in primes}
        rings = {p.ring for p in uniq.values()}
        if len(rings) > 1:
            raise ValueError("primes from different rings")
        ordered = tuple(sorted(uniq.values(), key=lambda p: p.sort_key))
        object.__setattr__(self, "primes", ordered)

    def __iter__(self) -> Iterator[MonomialPrime]:
        return iter(self.primes)

    def __len__(self) -> int:
        return len(self.primes)

    def __contains__(self, p: MonomialPrime) -> bool:
        return any(q.variables == p.variables for q in self.primes)

    def __or__(self, other: PrimeSet) -> PrimeSet:
        return PrimeSet(self.primes + other.primes)

    def issuperset(self, other: PrimeSet) -> bool:
        return all(p in self for p in other)

    def as_names(self) -> list[list[str]]:
        return [list(p.names) for p in self.primes]

    def __str__(self) -> str:
        return "{" + ", ".join(str(p) for p in self.primes) + "}"


@dataclass(frozen=True)
class StabilizationConfig:
    k_max: int = DEFAULT_K_MAX
    window: int = DEFAULT_WINDOW

    def __post_init__(self):
        if self.window < 2:
            raise ValueError("window must be at least 2")
        if self.window > self.k_max:
            raise ValueError(f"window {self.window} exceeds k_max {self.k_max}")


@dataclass(frozen=True)
class StabilizationReport:
    """Per-power Ass sets together with the observed stable set.

    ``verified`` is True only when a structural result fixes the answer for
    every k (monomial complete intersections); otherwise the stable set is
    what the computed window shows.
    """

    per_k: dict[int, PrimeSet]
    stable_set: PrimeSet
    stable_from: int
    verified: bool = False
    window_satisfied: bool = True
    notes: tuple[str, ...] = field(default=())


class CertifiedPrimes(tuple):
    """(primes, certified) pair returned by the structural assemblers."""

    def __new__(cls, primes: PrimeSet, certified: bool):
        return super().__new__(cls, (primes, certified))

    @property
    def primes(self) -> PrimeSet:
        return self[0]

    @property
    def certified(self) -> bool:
        return self[1]


# ---------------------------------------------------------------------------
# kernels on raw exponent tuples


def _socle_search(
    gens: Sequence[Exps],
    variables: Sequence[int],
    accept: Callable[[Exps], bool] | None = None,
    least: bool = True,
) -> int | None:
    """Least degree of a monomial in (I : p) outside I that passes ``accept``.

    A minimal generator f of (I : p) outside I is lcm(h_1, ..., h_r) where
    h_j = g / x_j for a generator g divisible by x_j, and the h_j can be taken
    with (h_j)_j = f_j.  The search picks the h_j one variable at a time as
    an A* search on degree.  Once x_j is picked its exponent is frozen:
    later picks may not raise it, and a pick for x_j must reach the current
    exponent of x_j.  The estimate for a partial lcm is the largest, over
    the variables still to pick, of the least degree any admissible pick
    adds.  Partial lcms in I are dropped since every completion stays in I.
    ``accept`` sees completed lcms only.  Returns None when nothing passes.
    With ``least`` off the search runs deepest-first and returns the degree
    of whichever lcm it completes first, which is all an existence test needs.
    """
    n = len(gens[0])
    pieces = []
    for i in variables:
        hs = [g[:i] + (g[i] - 1,) + g[i + 1 :] for g in gens if g[i]]
        if not hs:
            return None
        pieces.append((i, np.array(_minimalize(hs), dtype=np.int64)))
    pieces.sort(key=lambda t: len(t[1]))
    r = len(pieces)
    order = [i for i, _ in pieces]
    stacked = np.concatenate([h for _, h in pieces])
    own = np.concatenate([np.full(len(h), i) for i, h in pieces])
    offsets = np.cumsum([0] + [len(h) for _, h in pieces])
    garr = np.array(gens, dtype=np.int64)

    def admissible(block: np.ndarray, owner: np.ndarray, j: int, cur: np.ndarray) -> np.ndarray:
        frozen = order[:j]
        ok = block[np.arange(len(block)), owner] >= cur[owner]
        if frozen:
            ok &= (block[:, frozen] <= cur[frozen]).all(axis=1)
        return ok

    def estimate(j: int, cur: np.ndarray) -> int | None:
        if j == r:
            return 0
        block = stacked[offsets[j] :]
        ok = admissible(block, own[offsets[j] :], j, cur)
        inc = np.where(ok, np.maximum(block - cur, 0).sum(axis=1), np.iinfo(np.int64).max)
        best = np.minimum.reduceat(inc, offsets[j:-1] - offsets[j])
        top = int(best.max())
        return None if top == np.iinfo(np.int64).max else top

    start = (0,) * n
    # entries: (key, -level, degree, level, lcm, estimated)
    heap: list = [(0, 0, 0, 0, start, False)]
    seen: set[tuple[int, Exps]] = set()
    while heap:
        key, _, d, j, cur, done = heapq.heappop(heap)
        if (j, cur) in seen:
            continue
        seen.add((j, cur))
        arr = np.array(cur, dtype=np.int64)
        if not done:
            if (garr <= arr).all(axis=1).any():
                continue
            est = estimate(j, arr)
            if est is None:
                continue
            if least and d + est > key:
                seen.discard((j, cur))
                heapq.heappush(heap, (d + est, -j, d, j, cur, True))
                continue
        if j == r:
            if accept is None or accept(cur):
                return d
            continue
        block = pieces[j][1]
        block = block[admissible(block, np.full(len(block), order[j]), j, arr)]
        for e in set(map(tuple, np.maximum(block, arr).tolist())):
            if (j + 1, e) not in seen:
                dk = sum(e)
                heapq.heappush(heap, (max(key, dk) if least else 0, -(j + 1), dk, j + 1, e, False))
    return None


def _is_associated(gens: tuple[Exps, ...], n: int, amask: int) -> bool:
    drop = ((1 << n) - 1) & ~amask
    loc = _substitute_one(gens, drop)
    variables = [i for i in range(n) if (amask >> i) & 1]
    return _socle_search(loc, variables, least=False) is not None


@lru_cache(maxsize=2048)
def _ass_masks(gens: tuple[Exps, ...], n: int) -> tuple[int, ...]:
    gmasks = sorted({_mask(g) for g in gens}, key=lambda m: bin(m).count("1"))
    full = 0
    for m in gmasks:
        full |= m
    svars = [i for i in range(n) if (full >> i) & 1]
    found = []
    for r in range(1, len(svars) + 1):
        for combo in combinations(svars, r):
            amask = 0
            for i in combo:
                amask |= 1 << i
            # I ⊆ p_A iff every generator meets A
            if all(m & amask for m in gmasks) and _is_associated(gens, n, amask):
                found.append(amask)
    return tuple(found)


def _prime_from_mask(I: MonomialIdeal, amask: int) -> MonomialPrime:
    return MonomialPrime(I.ring, tuple(i for i in range(I.ring.n) if (amask >> i) & 1))


def _disjoint_or_raise(I: MonomialIdeal, J: MonomialIdeal) -> None:
    _same_ring(I.ring, J.ring)
    overlap = support(I) & support(J)
    if overlap:
        names = sorted(I.ring.variables[i] for i in overlap)
        raise SupportOverlapError(f"supports overlap in {names}")


# ---------------------------------------------------------------------------
# public operations


def is_associated(I: MonomialIdeal, p: MonomialPrime) -> bool:
    _require_proper(I)
    _same_ring(I.ring, p.ring)
    if not all(_mask(g) & p.mask for g in I.gens):
        return False
    if p.mask & ~_mask_of_support(I):
        return False
    return _is_associated(I.gens, I.ring.n, p.mask)


def _mask_of_support(I: MonomialIdeal) -> int:
    m = 0
    for g in I.gens:
        m |= _mask(g)
    return m


def ass(I: MonomialIdeal) -> PrimeSet:
    """Ass(I) for a proper nonzero monomial ideal."""
    _require_proper(I)
    return PrimeSet(_prime_from_mask(I, m) for m in _ass_masks(I.gens, I.ring.n))


def ass_power(I: MonomialIdeal, k: int) -> PrimeSet:
    _require_proper(I)
    return ass(power(I, k))


def _is_ci(I: MonomialIdeal) -> bool:
    seen = 0
    for g in I.gens:
        m = _mask(g)
        if seen & m:
            return False
        seen |= m
    return True


def ass_star(I: MonomialIdeal, k_max: int = DEFAULT_K_MAX) -> StabilizationReport:
    """Union of Ass(I^k) over 1 <= k <= k_max.

    ``stable_from`` is the first k at which the running union reaches its
    final value.
    """
    _require_proper(I)
    if k_max < 1:
        raise ValueError("k_max must be positive")
    per_k = {k: ass_power(I, k) for k in range(1, k_max + 1)}
    union = PrimeSet()
    stable_from = 1
    for k in range(1, k_max + 1):
        grown = union | per_k[k]
        if len(grown) != len(union):
            stable_from = k
        union = grown
    certified = _is_ci(I)
    return StabilizationReport(per_k, union, stable_from, verified=certified)


def ass_infty(I: MonomialIdeal, cfg: StabilizationConfig | None = None) -> StabilizationReport:
    """Ass(I^k) for large k, read off a finite window of powers."""
    _require_proper(I)
    cfg = cfg or StabilizationConfig()
    per_k = {k: ass_power(I, k) for k in range(1, cfg.k_max + 1)}
    last = per_k[cfg.k_max]
    stable_from = cfg.k_max
    while stable_from > 1 and per_k[stable_from - 1] == last:
        stable_from -= 1
    run = cfg.k_max - stable_from + 1
    certified = _is_ci(I)
    notes = ()
    if run < cfg.window:
        notes = (f"only {run} equal set(s) at the end of the window; need {cfg.window}",)
    return StabilizationReport(
        per_k, last, stable_from, verified=certified, window_satisfied=run >= cfg.window, notes=notes
    )


def ass_sum_power(I: MonomialIdeal, J: MonomialIdeal, k: int) -> PrimeSet:
    """Ass((I+J)^k) assembled from the parts, for disjoint supports.

    Union over 0 <= l < k of { p + q : p in Ass(I^(k-l)), q in Ass(J^(l+1)) }.
    """
    _require_proper(I)
    _require_proper(J)
    _disjoint_or_raise(I, J)
    if k < 1:
        raise ValueError("k must be positive")
    out = []
    for ell in range(k):
        for p in ass_power(I, k - ell):
            for q in ass_power(J, ell + 1):
                out.append(p + q)
    return PrimeSet(out)


def ass_product(I: MonomialIdeal, J: MonomialIdeal, k: int) -> PrimeSet:
    """Ass((IJ)^k) = Ass(I^k) ∪ Ass(J^k) for disjoint supports."""
    _require_proper(I)
    _require_proper(J)
    _disjoint_or_raise(I, J)
    if k < 1:
        raise ValueError("k must be positive")
    return ass_power(I, k) | ass_power(J, k)


def ass_sum_infty(
    I: MonomialIdeal, J: MonomialIdeal, cfg: StabilizationConfig | None = None
) -> CertifiedPrimes:
    """Stable primes of powers of I+J built from the parts' star and stable sets."""
    _require_proper(I)
    _require_proper(J)
    _disjoint_or_raise(I, J)
    cfg = cfg or StabilizationConfig()
    star_i, star_j = ass_star(I, cfg.k_max), ass_star(J, cfg.k_max)
    inf_i, inf_j = ass_infty(I, cfg), ass_infty(J, cfg)
    out = [p + q for p in star_i.stable_set for q in inf_j.stable_set]
    out += [p + q for p in inf_i.stable_set for q in star_j.stable_set]
    certified = all(r.verified for r in (star_i, star_j, inf_i, inf_j))
    return CertifiedPrimes(PrimeSet(out), certified)
