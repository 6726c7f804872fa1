"""Local and global v-numbers, v-function tables, and the closed forms for
sums and products of ideals in disjoint sets of variables.

Local v-numbers follow Conca's description

    v_p(I) = alpha( (I : p) / (I : (p + X_p^inf)) ),

where X_p is the product of the associated primes strictly containing p.
Because I : (p + X_p^k) = (I : p) ∩ (I : X_p^k), the denominator is
(I : p) ∩ (I : X_p^inf), and the least degree of the quotient is attained
at a minimal generator of (I : p) lying outside the saturation.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .assoc import PrimeSet, _disjoint_or_raise, _socle_search, ass
from .core import (
    Exps,
    MonomialIdeal,
    MonomialPrime,
    _require_proper,
    _same_ring,
    alpha,
    power,
    product,
)
from .errors import NotAssociatedError


@dataclass(frozen=True)
class LinearFit:
    slope: int
    intercept: int
    vstab: int
    certified: bool = False
    source: str = "fit"

    def __call__(self, k: int) -> int:
        return self.slope * k + self.intercept


@dataclass(frozen=True)
class VTable:
    per_k: dict[int, tuple[int, MonomialPrime]]
    fit: LinearFit | None = None
    notes: tuple[str, ...] = field(default=())

    @property
    def values(self) -> list[int]:
        return [self.per_k[k][0] for k in sorted(self.per_k)]


def x_ideal(ass_set: PrimeSet, p: MonomialPrime) -> MonomialIdeal:
    """Product of the primes of ``ass_set`` strictly containing ``p`` (unit if none)."""
    if p not in ass_set:
        raise NotAssociatedError(f"{p} is not in {ass_set}")
    out = MonomialIdeal.unit(p.ring)
    for q in _strict_superprimes(ass_set, p):
        out = product(out, q.to_ideal())
    return out


def _strict_superprimes(ass_set: PrimeSet, p: MonomialPrime) -> list[MonomialPrime]:
    pm = p.mask
    return [q for q in ass_set if q.mask != pm and q.mask & pm == pm]


def _in_saturation(gens: Sequence[Exps], s: Exps, prime_masks: Sequence[int]) -> bool:
    """Whether s lies in (I : (P_1 ... P_r)^inf).

    The saturation is the intersection of the ideals obtained from I by
    forgetting the variables of a transversal T (one variable from each
    P_j).  s survives forgetting T iff some generator u has its excess
    set {i : u_i > s_i} inside T, so s is outside the saturation iff some
    transversal contains no excess set.
    """
    union = 0
    for m in prime_masks:
        union |= m
    excess = set()
    for u in gens:
        d = 0
        for i, (a, b) in enumerate(zip(u, s)):
            if a > b:
                d |= 1 << i
        if d & ~union == 0:
            excess.add(d)
    if not excess:
        return False
    seen: set[tuple[int, int]] = set()
    masks = list(prime_masks)

    def escapes(j: int, T: int) -> bool:
        if any(d & T == d for d in excess):
            return False
        if j == len(masks):
            return True
        if (j, T) in seen:
            return False
        seen.add((j, T))
        pm = masks[j]
        if T & pm:
            return escapes(j + 1, T)
        bit = 1
        while bit <= pm:
            if pm & bit and escapes(j + 1, T | bit):
                return True
            bit <<= 1
        return False

    return not escapes(0, 0)


def v_local(I: MonomialIdeal, p: MonomialPrime) -> int:
    """v_p(I): least degree of a monomial f with (I : f) = p."""
    _require_proper(I)
    _same_ring(I.ring, p.ring)
    ass_set = ass(I)
    if p not in ass_set:
        raise NotAssociatedError(f"{p} is not associated to {I}")
    return _v_local(I, p, ass_set)


def _v_local(I: MonomialIdeal, p: MonomialPrime, ass_set: PrimeSet) -> int:
    masks = [q.mask for q in _strict_superprimes(ass_set, p)]

    def outside_saturation(s: Exps) -> bool:
        return not _in_saturation(I.gens, s, masks)

    found = _socle_search(I.gens, p.variables, outside_saturation if masks else None)
    if found is None:
        raise NotAssociatedError(f"{p} is not associated to {I}")
    return found


def v_local_all(I: MonomialIdeal) -> dict[MonomialPrime, int]:
    """v_p(I) for every associated prime, in canonical prime order."""
    _require_proper(I)
    ass_set = ass(I)
    return {p: _v_local(I, p, ass_set) for p in ass_set}


def v_number(I: MonomialIdeal) -> tuple[int, MonomialPrime]:
    """v(I) and the first prime (canonical order) attaining it."""
    best: tuple[int, MonomialPrime] | None = None
    for p, v in v_local_all(I).items():
        if best is None or v < best[0]:
            best = (v, p)
    assert best is not None
    return best


def _v_number_of_power(args: tuple[MonomialIdeal, int]) -> tuple[int, MonomialPrime]:
    I, k = args
    return v_number(power(I, k))


def v_function(I: MonomialIdeal, k_max: int, jobs: int = 1) -> VTable:
    """Direct table of v(I^k) for k = 1..k_max, with a fitted line.

    The fit is certified when I is a monomial complete intersection or an
    equigenerated vertex splittable ideal; otherwise it is read off the
    computed window and marked heuristic.
    """
    _require_proper(I)
    if k_max < 1:
        raise ValueError("k_max must be positive")
    ks = list(range(1, k_max + 1))
    if jobs > 1 and k_max > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_v_number_of_power, [(I, k) for k in ks]))
    else:
        results = [_v_number_of_power((I, k)) for k in ks]
    table = VTable(dict(zip(ks, results)))
    return _certify(I, fit_linear(table))


def fit_linear(table: VTable) -> VTable:
    """Line through the last two points, extended backwards as far as it holds."""
    ks = sorted(table.per_k)
    if ks != list(range(1, len(ks) + 1)):
        raise ValueError("table keys must be 1..k_max")
    vals = [table.per_k[k][0] for k in ks]
    if len(ks) < 3:
        return VTable(table.per_k, None, table.notes + ("need at least three points to fit",))
    if vals[-1] - vals[-2] != vals[-2] - vals[-3]:
        return VTable(table.per_k, None, table.notes + ("last three values are not collinear",))
    a = vals[-1] - vals[-2]
    b = vals[-1] - a * ks[-1]
    vstab = ks[-1]
    while vstab > 1 and vals[vstab - 2] == a * (vstab - 1) + b:
        vstab -= 1
    return VTable(table.per_k, LinearFit(a, b, vstab), table.notes)


def _certify(I: MonomialIdeal, table: VTable) -> VTable:
    from . import structure

    cert: LinearFit | None = None
    if structure.is_complete_intersection(I):
        cert = structure.ci_v_line(I)
    elif structure.is_equigenerated(I) and structure.vertex_split(I) is not None:
        cert = LinearFit(alpha(I), -1, 1, certified=True, source="equigenerated vertex splittable")
    if cert is None:
        return table
    for k, (v, _) in table.per_k.items():
        if v != cert(k):
            raise AssertionError(
                f"direct v(I^{k}) = {v} contradicts the {cert.source} formula value {cert(k)}"
            )
    return VTable(table.per_k, cert, table.notes)


# ---------------------------------------------------------------------------
# sums and products of ideals in disjoint variables


def v_sum_local(
    I: MonomialIdeal, J: MonomialIdeal, p: MonomialPrime, q: MonomialPrime, k: int
) -> int:
    """v_{p+q}((I+J)^k) as the minimum over 0 <= l < k of v_p(I^(k-l)) + v_q(J^(l+1)).

    Only terms with p in Ass(I^(k-l)) and q in Ass(J^(l+1)) take part; an
    empty range means p + q is not associated and is an error.
    """
    _require_proper(I)
    _require_proper(J)
    _disjoint_or_raise(I, J)
    if k < 1:
        raise ValueError("k must be positive")
    best = None
    for ell in range(k):
        Ik, Jl = power(I, k - ell), power(J, ell + 1)
        ai, aj = ass(Ik), ass(Jl)
        if p in ai and q in aj:
            val = _v_local(Ik, p, ai) + _v_local(Jl, q, aj)
            if best is None or val < best:
                best = val
    if best is None:
        raise NotAssociatedError(f"{p + q} is not associated to (I+J)^{k}")
    return best


def v_sum(
    I: MonomialIdeal,
    J: MonomialIdeal,
    k: int,
    v_power_i: Callable[[int], int] | None = None,
    v_power_j: Callable[[int], int] | None = None,
) -> int:
    """v((I+J)^k) = min over 0 <= l < k of v(I^(k-l)) + v(J^(l+1)); never forms (I+J)^k.

    ``v_power_i(m)`` and ``v_power_j(m)`` supply v(I^m) and v(J^m) when a
    cheaper route is known (for instance the product formula when J is
    itself a product in disjoint variables).  By default they are computed
    directly.
    """
    _require_proper(I)
    _require_proper(J)
    _disjoint_or_raise(I, J)
    if k < 1:
        raise ValueError("k must be positive")
    vi = v_power_i or (lambda m: v_number(power(I, m))[0])
    vj = v_power_j or (lambda m: v_number(power(J, m))[0])
    return min(vi(k - ell) + vj(ell + 1) for ell in range(k))


def v_product_local(I: MonomialIdeal, J: MonomialIdeal, P: MonomialPrime, k: int) -> int:
    """v_P((IJ)^k) = v_P(I^k) + alpha(J) k, or the symmetric form when P lives in J's block."""
    _require_proper(I)
    _require_proper(J)
    _disjoint_or_raise(I, J)
    if k < 1:
        raise ValueError("k must be positive")
    Ik, Jk = power(I, k), power(J, k)
    ai = ass(Ik)
    if P in ai:
        return _v_local(Ik, P, ai) + alpha(J) * k
    aj = ass(Jk)
    if P in aj:
        return _v_local(Jk, P, aj) + alpha(I) * k
    raise NotAssociatedError(f"{P} is associated to neither I^{k} nor J^{k}")


def v_product(I: MonomialIdeal, J: MonomialIdeal, k: int) -> int:
    """v((IJ)^k) = min(v(I^k) + alpha(J) k, v(J^k) + alpha(I) k), valid for every k >= 1."""
    _require_proper(I)
    _require_proper(J)
    _disjoint_or_raise(I, J)
    if k < 1:
        raise ValueError("k must be positive")
    vi = v_number(power(I, k))[0]
    vj = v_number(power(J, k))[0]
    return min(vi + alpha(J) * k, vj + alpha(I) * k)


def lower_bound(I: MonomialIdeal, k: int) -> int:
    """alpha(I) k - 1, a floor for v(I^k)."""
    return alpha(I) * k - 1
