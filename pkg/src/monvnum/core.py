"""Exact arithmetic on monomials and monomial ideals.

Monomials are exponent vectors over an :class:`AmbientRing`.  A
:class:`MonomialIdeal` stores its minimal monomial generators as a sorted
tuple of exponent tuples, so two ideals are equal exactly when their
generator tuples are equal.  Nothing here knows about coefficients.

The hot loops work on raw ``tuple[int, ...]`` exponent vectors; the
``Monomial`` wrapper exists for the public API.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import ImproperIdealError, RingMismatchError

Exps = tuple[int, ...]

# Exponents are kept within a signed 32-bit range so results stay portable.
MAX_EXPONENT = 2**31 - 1


def _check_exps(e: Exps) -> Exps:
    for a in e:
        if a < 0:
            raise ValueError(f"negative exponent in {e}")
        if a > MAX_EXPONENT:
            raise OverflowError(f"exponent {a} exceeds {MAX_EXPONENT}")
    return e


@dataclass(frozen=True)
class AmbientRing:
    """Polynomial ring given by an ordered tuple of variable names."""

    variables: tuple[str, ...]
    _index: dict[str, int] = field(init=False, repr=False, compare=False, hash=False)

    def __init__(self, variables: Iterable[str]):
        names = tuple(variables)
        if not names:
            raise ValueError("a ring needs at least one variable")
        for v in names:
            if not isinstance(v, str) or not v:
                raise ValueError(f"invalid variable name {v!r}")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        object.__setattr__(self, "variables", names)
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(names)})

    @property
    def n(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None

    def var(self, name: str) -> Monomial:
        e = [0] * self.n
        e[self.index(name)] = 1
        return Monomial(self, tuple(e))

    def one(self) -> Monomial:
        return Monomial(self, (0,) * self.n)

    def monomial(self, **powers: int) -> Monomial:
        e = [0] * self.n
        for name, a in powers.items():
            e[self.index(name)] = a
        return Monomial(self, tuple(e))

    def __str__(self) -> str:
        return "ring " + " ".join(self.variables)


def _same_ring(a: AmbientRing, b: AmbientRing) -> None:
    if a != b:
        raise RingMismatchError(f"{a} and {b} differ")


# ---------------------------------------------------------------------------
# raw exponent-vector helpers


def _mul(a: Exps, b: Exps) -> Exps:
    return tuple(x + y for x, y in zip(a, b))


def _lcm(a: Exps, b: Exps) -> Exps:
    return tuple(x if x > y else y for x, y in zip(a, b))


def _divides(a: Exps, b: Exps) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _colon_exp(u: Exps, v: Exps) -> Exps:
    """lcm(u, v) / v."""
    return tuple(x - y if x > y else 0 for x, y in zip(u, v))


def _mask(e: Exps) -> int:
    m = 0
    for i, a in enumerate(e):
        if a:
            m |= 1 << i
    return m


def _sort_key(e: Exps):
    # degree first, then lex with x_1 > x_2 > ... so x^2 precedes x*y
    return (sum(e), tuple(-a for a in e))


def _minimalize(cands: Iterable[Exps]) -> tuple[Exps, ...]:
    """Canonically sorted divisibility antichain of ``cands``."""
    uniq = sorted(set(cands), key=_sort_key)
    if len(uniq) <= 1:
        return tuple(uniq)
    kept: list[Exps] = []
    kept_masks: list[int] = []
    # only monomials of strictly smaller degree can properly divide
    lower = 0
    cur_deg = -1
    for e in uniq:
        d = sum(e)
        if d != cur_deg:
            lower = len(kept)
            cur_deg = d
        m = _mask(e)
        for j in range(lower):
            km = kept_masks[j]
            if km & m == km and _divides(kept[j], e):
                break
        else:
            kept.append(e)
            kept_masks.append(m)
    return tuple(kept)


def _contains(gens: Sequence[Exps], e: Exps) -> bool:
    d = sum(e)
    for g in gens:
        if sum(g) > d:
            # generators are sorted by degree
            return False
        if _divides(g, e):
            return True
    return False


# ---------------------------------------------------------------------------
# vectorized kernels for large generator sets

# cap on the number of booleans materialized per comparison block
_BLOCK = 1 << 22
# below this many candidates the pure-Python loops are faster
NUMPY_THRESHOLD = 4000


def _as_array(gens: Sequence[Exps], n: int) -> np.ndarray:
    if not gens:
        return np.zeros((0, n), dtype=np.int64)
    return np.asarray(gens, dtype=np.int64).reshape(len(gens), n)


def _np_unique_rows(X: np.ndarray) -> np.ndarray:
    if len(X) == 0:
        return X
    return np.unique(X, axis=0)


def _np_members(G: np.ndarray, X: np.ndarray) -> np.ndarray:
    """Boolean mask: row of X divisible by some row of G."""
    out = np.zeros(len(X), dtype=bool)
    if len(G) == 0 or len(X) == 0:
        return out
    step = max(1, _BLOCK // (len(G) * X.shape[1] or 1))
    for a in range(0, len(X), step):
        C = X[a : a + step]
        out[a : a + step] = (G[None, :, :] <= C[:, None, :]).all(axis=2).any(axis=1)
    return out


def _np_minimal(X: np.ndarray) -> np.ndarray:
    """Rows of X (assumed distinct) not properly divisible by another row."""
    if len(X) <= 1:
        return X
    deg = X.sum(axis=1)
    X = X[np.argsort(deg, kind="stable")]
    deg = X.sum(axis=1)
    keep = np.ones(len(X), dtype=bool)
    step = max(1, _BLOCK // (len(X) * X.shape[1] or 1))
    for a in range(0, len(X), step):
        C = X[a : a + step]
        hi = np.searchsorted(deg, deg[a + len(C) - 1], side="left")
        if hi == 0:
            continue
        # only strictly lower degree rows can properly divide
        lower = X[:hi]
        div = (lower[None, :, :] <= C[:, None, :]).all(axis=2)
        div &= deg[None, :hi] < deg[a : a + len(C), None]
        keep[a : a + len(C)] = ~div.any(axis=1)
    return X[keep]


def _to_tuples(X: np.ndarray) -> tuple[Exps, ...]:
    return tuple(sorted((tuple(int(a) for a in row) for row in X), key=_sort_key))


def _np_pairwise(A: np.ndarray, B: np.ndarray, op) -> np.ndarray:
    n = A.shape[1]
    return op(A[:, None, :], B[None, :, :]).reshape(-1, n)


@lru_cache(maxsize=4096)
def _product_gens(a: tuple[Exps, ...], b: tuple[Exps, ...]) -> tuple[Exps, ...]:
    if len(a) * len(b) > NUMPY_THRESHOLD:
        n = len(a[0])
        X = _np_pairwise(_as_array(a, n), _as_array(b, n), np.add)
        return _to_tuples(_np_minimal(_np_unique_rows(X)))
    return _minimalize(_mul(u, v) for u in a for v in b)


@lru_cache(maxsize=1024)
def _power_gens(gens: tuple[Exps, ...], k: int) -> tuple[Exps, ...]:
    if k == 1:
        return gens
    return _product_gens(_power_gens(gens, k - 1), gens)


def _intersect_gens(a: Sequence[Exps], b: Sequence[Exps]) -> tuple[Exps, ...]:
    if len(a) * len(b) > NUMPY_THRESHOLD:
        n = len(a[0])
        X = _np_pairwise(_as_array(a, n), _as_array(b, n), np.maximum)
        return _to_tuples(_np_minimal(_np_unique_rows(X)))
    return _minimalize(_lcm(u, v) for u in a for v in b)


def _colon_mono_gens(gens: Sequence[Exps], v: Exps) -> tuple[Exps, ...]:
    return _minimalize(_colon_exp(u, v) for u in gens)


def _substitute_one(gens: Sequence[Exps], drop_mask: int) -> tuple[Exps, ...]:
    """Set the variables in ``drop_mask`` to 1 and minimalize."""
    return _minimalize(
        tuple(0 if (drop_mask >> i) & 1 else a for i, a in enumerate(g)) for g in gens
    )


# ---------------------------------------------------------------------------
# public value types


@dataclass(frozen=True)
class Monomial:
    ring: AmbientRing
    exponents: Exps

    def __post_init__(self):
        if len(self.exponents) != self.ring.n:
            raise ValueError(
                f"exponent vector of length {len(self.exponents)} for a ring with {self.ring.n} variables"
            )
        object.__setattr__(self, "exponents", _check_exps(tuple(int(a) for a in self.exponents)))

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i for i, a in enumerate(self.exponents) if a)

    def is_one(self) -> bool:
        return not any(self.exponents)

    def divides(self, other: Monomial) -> bool:
        _same_ring(self.ring, other.ring)
        return _divides(self.exponents, other.exponents)

    def lcm(self, other: Monomial) -> Monomial:
        _same_ring(self.ring, other.ring)
        return Monomial(self.ring, _lcm(self.exponents, other.exponents))

    def __mul__(self, other: Monomial) -> Monomial:
        _same_ring(self.ring, other.ring)
        return Monomial(self.ring, _mul(self.exponents, other.exponents))

    def __pow__(self, k: int) -> Monomial:
        return Monomial(self.ring, tuple(a * k for a in self.exponents))

    def __truediv__(self, other: Monomial) -> Monomial:
        _same_ring(self.ring, other.ring)
        if not _divides(other.exponents, self.exponents):
            raise ValueError(f"{other} does not divide {self}")
        return Monomial(self.ring, tuple(x - y for x, y in zip(self.exponents, other.exponents)))

    def __str__(self) -> str:
        return format_exps(self.ring, self.exponents)


def format_exps(ring: AmbientRing, e: Exps) -> str:
    parts = []
    for name, a in zip(ring.variables, e):
        if a == 1:
            parts.append(name)
        elif a > 1:
            parts.append(f"{name}^{a}")
    return "*".join(parts) if parts else "1"


@dataclass(frozen=True)
class MonomialIdeal:
    """Monomial ideal held by its minimal generators.

    Construct through :func:`minimalize` or :meth:`from_exponents`; the
    raw constructor assumes ``gens`` is already canonical.
    """

    ring: AmbientRing
    gens: tuple[Exps, ...]

    @classmethod
    def from_exponents(cls, ring: AmbientRing, exps: Iterable[Sequence[int]]) -> MonomialIdeal:
        cands = []
        for e in exps:
            e = _check_exps(tuple(int(a) for a in e))
            if len(e) != ring.n:
                raise ValueError(f"exponent vector {e} does not fit {ring}")
            cands.append(e)
        return cls(ring, _minimalize(cands))

    @classmethod
    def zero(cls, ring: AmbientRing) -> MonomialIdeal:
        return cls(ring, ())

    @classmethod
    def unit(cls, ring: AmbientRing) -> MonomialIdeal:
        return cls(ring, ((0,) * ring.n,))

    @property
    def generators(self) -> tuple[Monomial, ...]:
        return tuple(Monomial(self.ring, g) for g in self.gens)

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return len(self.gens) == 1 and not any(self.gens[0])

    def is_proper_nonzero(self) -> bool:
        return bool(self.gens) and not self.is_unit()

    def __contains__(self, m: Monomial) -> bool:
        return contains(self, m)

    def __add__(self, other: MonomialIdeal) -> MonomialIdeal:
        return ideal_sum(self, other)

    def __mul__(self, other: MonomialIdeal) -> MonomialIdeal:
        return product(self, other)

    def __pow__(self, k: int) -> MonomialIdeal:
        return power(self, k)

    def __and__(self, other: MonomialIdeal) -> MonomialIdeal:
        return intersect(self, other)

    def __len__(self) -> int:
        return len(self.gens)

    def __str__(self) -> str:
        if not self.gens:
            return "(0)"
        return "(" + ", ".join(format_exps(self.ring, g) for g in self.gens) + ")"


@dataclass(frozen=True)
class MonomialPrime:
    """Prime ideal generated by a nonempty set of variables."""

    ring: AmbientRing
    variables: tuple[int, ...]

    def __post_init__(self):
        vs = tuple(sorted(set(int(i) for i in self.variables)))
        if not vs:
            raise ValueError("a monomial prime needs at least one variable")
        if vs[0] < 0 or vs[-1] >= self.ring.n:
            raise ValueError(f"variable index out of range for {self.ring}")
        object.__setattr__(self, "variables", vs)

    @classmethod
    def from_names(cls, ring: AmbientRing, names: Iterable[str]) -> MonomialPrime:
        return cls(ring, tuple(ring.index(v) for v in names))

    @property
    def mask(self) -> int:
        m = 0
        for i in self.variables:
            m |= 1 << i
        return m

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(self.ring.variables[i] for i in self.variables)

    @property
    def sort_key(self):
        return (len(self.variables), self.variables)

    def to_ideal(self) -> MonomialIdeal:
        n = self.ring.n
        gens = []
        for i in self.variables:
            e = [0] * n
            e[i] = 1
            gens.append(tuple(e))
        return MonomialIdeal(self.ring, _minimalize(gens))

    def issubset(self, other: MonomialPrime) -> bool:
        return set(self.variables) <= set(other.variables)

    def __add__(self, other: MonomialPrime) -> MonomialPrime:
        _same_ring(self.ring, other.ring)
        return MonomialPrime(self.ring, self.variables + other.variables)

    def __str__(self) -> str:
        return "(" + ",".join(self.names) + ")"


# ---------------------------------------------------------------------------
# operations


def minimalize(gens: Iterable[Monomial], ring: AmbientRing | None = None) -> MonomialIdeal:
    """Ideal generated by ``gens`` in canonical minimal form.

    ``ring`` is required only when ``gens`` is empty (the zero ideal).
    """
    gens = list(gens)
    if not gens:
        if ring is None:
            raise ValueError("ring required for an empty generator list")
        return MonomialIdeal.zero(ring)
    r = ring or gens[0].ring
    for g in gens:
        _same_ring(r, g.ring)
    return MonomialIdeal(r, _minimalize(g.exponents for g in gens))


def contains(I: MonomialIdeal, m: Monomial) -> bool:
    _same_ring(I.ring, m.ring)
    return _contains(I.gens, m.exponents)


def ideal_sum(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _same_ring(I.ring, J.ring)
    return MonomialIdeal(I.ring, _minimalize(I.gens + J.gens))


def product(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _same_ring(I.ring, J.ring)
    return MonomialIdeal(I.ring, _product_gens(I.gens, J.gens))


def power(I: MonomialIdeal, k: int) -> MonomialIdeal:
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"power exponent must be a positive integer, got {k!r}")
    if not I.gens:
        return I
    top = max(max(g) for g in I.gens)
    if top * k > MAX_EXPONENT:
        raise OverflowError(f"I^{k} would exceed exponent bound {MAX_EXPONENT}")
    return MonomialIdeal(I.ring, _power_gens(I.gens, k))


def intersect(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _same_ring(I.ring, J.ring)
    return MonomialIdeal(I.ring, _intersect_gens(I.gens, J.gens))


def colon_monomial(I: MonomialIdeal, v: Monomial) -> MonomialIdeal:
    """(I : v), generated by lcm(u, v)/v for u in G(I)."""
    _same_ring(I.ring, v.ring)
    return MonomialIdeal(I.ring, _colon_mono_gens(I.gens, v.exponents))


def colon_ideal(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _same_ring(I.ring, J.ring)
    if J.is_zero():
        raise ValueError("colon by the zero ideal")
    acc: tuple[Exps, ...] | None = None
    # (I : J) is the intersection of (I : g) over g in G(J)
    for g in J.gens:
        part = _colon_mono_gens(I.gens, g)
        acc = part if acc is None else _intersect_gens(acc, part)
    return MonomialIdeal(I.ring, acc)


def saturate(I: MonomialIdeal, J: MonomialIdeal, cap: int | None = None) -> tuple[MonomialIdeal, int]:
    """Stable value of I ⊆ (I:J) ⊆ (I:J^2) ⊆ ... and the exponent where it settles."""
    _same_ring(I.ring, J.ring)
    if J.is_zero():
        raise ValueError("saturation by the zero ideal")
    if cap is None:
        top = max((max(e) for e in I.gens if e), default=0)
        cap = 10 * (1 + top)
    cur = I
    for k in range(cap + 1):
        nxt = colon_ideal(cur, J)
        if nxt == cur:
            return cur, k
        cur = nxt
    raise RuntimeError(f"saturation did not stabilize within {cap} steps")


def saturate_fast(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    """(I : J^∞) as the intersection of (I : g^∞) over g in G(J).

    (I : g^∞) just forgets the variables of supp(g); only inclusion-minimal
    supports matter.
    """
    _same_ring(I.ring, J.ring)
    if J.is_zero():
        raise ValueError("saturation by the zero ideal")
    masks = sorted({_mask(g) for g in J.gens}, key=lambda m: bin(m).count("1"))
    minimal: list[int] = []
    for m in masks:
        if not any(k & m == k for k in minimal):
            minimal.append(m)
    acc: tuple[Exps, ...] | None = None
    for m in minimal:
        part = _substitute_one(I.gens, m)
        acc = part if acc is None else _intersect_gens(acc, part)
    return MonomialIdeal(I.ring, acc)


def localize(I: MonomialIdeal, p: MonomialPrime) -> MonomialIdeal:
    """Monomial localization: variables outside ``p`` are set to 1."""
    _same_ring(I.ring, p.ring)
    drop = ((1 << I.ring.n) - 1) & ~p.mask
    return MonomialIdeal(I.ring, _substitute_one(I.gens, drop))


def _require_proper(I: MonomialIdeal) -> None:
    if I.is_zero():
        raise ImproperIdealError("the zero ideal is not allowed here")
    if I.is_unit():
        raise ImproperIdealError("the unit ideal is not allowed here")


def alpha(I: MonomialIdeal) -> int:
    _require_proper(I)
    return sum(I.gens[0])


def support(I: MonomialIdeal) -> frozenset[int]:
    _require_proper(I)
    m = 0
    for g in I.gens:
        m |= _mask(g)
    return frozenset(i for i in range(I.ring.n) if (m >> i) & 1)


def mu(I: MonomialIdeal) -> int:
    _require_proper(I)
    return len(I.gens)


def lcm_gens(I: MonomialIdeal) -> Monomial:
    _require_proper(I)
    top = I.gens[0]
    for g in I.gens[1:]:
        top = _lcm(top, g)
    return Monomial(I.ring, top)


def as_prime(I: MonomialIdeal) -> MonomialPrime | None:
    if not I.gens or I.is_unit():
        return None
    idx = []
    for g in I.gens:
        if sum(g) != 1:
            return None
        idx.append(g.index(1))
    return MonomialPrime(I.ring, tuple(idx))


def is_equigenerated(I: MonomialIdeal) -> bool:
    return len({sum(g) for g in I.gens}) <= 1


def supports_disjoint(I: MonomialIdeal, J: MonomialIdeal) -> bool:
    _same_ring(I.ring, J.ring)
    return not (support(I) & support(J))
