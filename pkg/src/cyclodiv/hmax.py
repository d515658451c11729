"""Exact computation of H(r, n), the maximal |r-th coefficient| over divisors
of x^n - 1.

Two routes that must agree:

* h_bruteforce -- enumerate all 2^tau(n) divisor subsets (every monic divisor
  with constant term 1 is a product of normalized cyclotomics over a subset
  of divisors of n) and track the extreme coefficient.
* h_fast -- any subset product is congruent mod x^(r+1) to
  prod_{d<=r} (1 - x^d)^(k(d)) where k(d) is the net signed count of subset
  members m with d | m, weighted by mu(m/d).  Enumerate the reachable k
  vectors by iterated Minkowski sums over distinct per-divisor contribution
  vectors, then maximize over that far smaller set.

The brute-force engine is the oracle: depth-first include/exclude with an
explicit product stack, plus an internal vectorized fast path (int64 table
doubling) that is used only when a rigorous coefficient bound shows int64
cannot overflow; both engines return bit-identical results.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .arith import cofactor_mobius, divisors, factorize, mobius
from .cyclotomic import _truncated_coeffs
from .errors import ReachableSetOverflowError, TooManyDivisorsError
from .series import TruncatedSeries, _binomial_power_coeffs, _mul_trunc

DEFAULT_TAU_CAP = 20
DEFAULT_REACHABLE_CAP = 10_000_000

# Table doubling allocates 2^active rows; past this, fall back to the stack.
_TABLE_MAX_ACTIVE = 22
_INT64_SAFE = 1 << 62


@dataclass(frozen=True)
class ExponentVector:
    """Net exponents k(1)..k(order) of (1 - x^d) reachable from a subset."""

    order: int
    k: tuple[int, ...]


@dataclass(frozen=True)
class HResult:
    """H(r, n) with a witness subset of divisors of n attaining it."""

    r: int
    n: int
    value: int
    witness: tuple[int, ...]
    method: str  # "bruteforce" | "exponent_dp"


def _check_rn(r: int, n: int) -> None:
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")


def divisor_subset_poly(subset, n: int, order: int) -> TruncatedSeries:
    """Product over m in subset of delta(m) * Phi_m, truncated at order.

    Every m must divide n; an empty subset yields 1.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    out = (1,) + (0,) * order
    for m in sorted(set(subset)):
        if m < 1 or n % m != 0:
            raise ValueError(f"{m} does not divide {n}")
        out = _mul_trunc(out, _truncated_coeffs(m, order))
    return TruncatedSeries(order, out)


# ---------------------------------------------------------------------------
# brute force over divisor subsets


def _active_factors(divs, r: int):
    """(divisor, truncated coeffs) for divisors whose truncation is not 1.

    Divisors truncating to 1 cannot change any product; leaving them out
    shrinks the enumeration and matches the lexicographic witness rule
    (including such a divisor only makes the include/exclude vector larger).
    """
    one = (1,) + (0,) * r
    return [(m, _truncated_coeffs(m, r)) for m in divs if _truncated_coeffs(m, r) != one]


def _abs_product_bound(active, r: int) -> int:
    """Max coefficient of prod |factor|; bounds every subset product coeff."""
    prod = (1,) + (0,) * r
    for _, s in active:
        prod = _mul_trunc(prod, tuple(abs(c) for c in s))
    return max(prod)


def _max_subsets_dfs(active, r: int) -> tuple[int, int]:
    """Depth-first include/exclude with a product stack, exact ints.

    Returns (value, mask); bit j of mask = active[j] included.  Exploring the
    exclude branch first and updating only on strict improvement yields the
    lexicographically smallest include/exclude vector among maximizers.
    """
    best_val = -1
    best_mask = 0
    count = len(active)

    def rec(i: int, cur: tuple[int, ...], mask: int) -> None:
        nonlocal best_val, best_mask
        if i == count:
            v = abs(cur[r])
            if v > best_val:
                best_val, best_mask = v, mask
            return
        rec(i + 1, cur, mask)
        rec(i + 1, _mul_trunc(cur, active[i][1]), mask | (1 << i))

    rec(0, (1,) + (0,) * r, 0)
    return best_val, best_mask


def _max_subsets_table(active, r: int) -> tuple[int, int]:
    """Vectorized subset table: row for every mask, doubled per divisor.

    Caller must have verified the int64 bound.  Same (value, mask) contract
    and tie-breaking as _max_subsets_dfs.
    """
    count = len(active)
    rows = np.zeros((1 << count, r + 1), dtype=np.int64)
    rows[0, 0] = 1
    size = 1
    for _, s in active:
        blk = rows[:size]
        new = rows[size : 2 * size]
        for i, c in enumerate(s):
            if c:
                new[:, i:] += c * blk[:, : r + 1 - i]
        size *= 2
    col = np.abs(rows[:, r])
    best = int(col.max(initial=0))
    idxs = np.flatnonzero(col == best)
    # Lexicographic order on include/exclude vectors (smallest divisor most
    # significant) is numeric order on the bit-reversed mask.
    rev = np.zeros_like(idxs)
    for j in range(count):
        rev |= ((idxs >> j) & 1) << (count - 1 - j)
    mask = int(idxs[int(np.argmin(rev))]) if len(idxs) else 0
    return best, mask


def h_bruteforce(
    r: int,
    n: int,
    *,
    tau_cap: int = DEFAULT_TAU_CAP,
    use_table: bool | None = None,
) -> HResult:
    """H(r, n) by exhaustive subset enumeration; the oracle route.

    Refuses tau(n) > tau_cap (2^tau subsets).  use_table forces or forbids
    the internal vectorized engine; default picks it whenever the rigorous
    int64 bound allows, and results are identical either way.
    """
    _check_rn(r, n)
    f = factorize(n)
    divs = divisors(f)
    if len(divs) > tau_cap:
        raise TooManyDivisorsError(n, len(divs), tau_cap)
    active = _active_factors(divs, r)
    if use_table is None:
        use_table = (
            len(active) <= _TABLE_MAX_ACTIVE
            and _abs_product_bound(active, r) < _INT64_SAFE
        )
    elif use_table:
        if len(active) > 24:
            raise ValueError("table engine would allocate 2^%d rows" % len(active))
        if _abs_product_bound(active, r) >= _INT64_SAFE:
            raise ValueError("coefficients exceed the int64 bound; use_table not safe")
    value, mask = (
        _max_subsets_table(active, r) if use_table else _max_subsets_dfs(active, r)
    )
    witness = tuple(m for j, (m, _) in enumerate(active) if mask >> j & 1)
    return HResult(r, n, value, witness, "bruteforce")


# ---------------------------------------------------------------------------
# exponent-vector dynamic program


def _contribution_vector(m: int, order: int) -> tuple[int, ...]:
    """v[d-1] = mu(m/d) for d | m with d <= order, else 0."""
    f = factorize(m)
    v = [0] * order
    for d in range(1, min(order, m) + 1):
        if m % d == 0:
            v[d - 1] = cofactor_mobius(f, d)
    return tuple(v)


def _grouped_contributions(n: int, order: int):
    """Distinct nonzero contribution vectors with their member divisors.

    Divisors with an all-zero vector cannot move k and are dropped; groups
    are sorted by vector so downstream iteration is deterministic.
    """
    zero = (0,) * order
    groups: dict[tuple[int, ...], list[int]] = {}
    for m in divisors(factorize(n)):
        v = _contribution_vector(m, order)
        if v != zero:
            groups.setdefault(v, []).append(m)
    return sorted((v, sorted(ms)) for v, ms in groups.items())


def _minkowski_stages(groups, order: int, cap: int):
    """Stage t holds every k reachable using only the first t groups."""
    cur = {(0,) * order}
    stages = [cur]
    for v, members in groups:
        count = len(members)
        nxt = set(cur)
        shifted = cur
        for _ in range(count):
            shifted = {tuple(a + b for a, b in zip(k, v)) for k in shifted}
            nxt |= shifted
        if len(nxt) > cap:
            raise ReachableSetOverflowError(len(nxt), cap)
        stages.append(nxt)
        cur = nxt
    return stages


def reachable_vectors(
    n: int, order: int, *, cap: int = DEFAULT_REACHABLE_CAP
) -> set[ExponentVector]:
    """The exact set {k_S : S a subset of divisors of n} of net exponents."""
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    groups = _grouped_contributions(n, order)
    stages = _minkowski_stages(groups, order, cap)
    return {ExponentVector(order, k) for k in stages[-1]}


@lru_cache(maxsize=65536)
def _binpow_cached(d: int, e: int, order: int) -> tuple[int, ...]:
    return _binomial_power_coeffs(d, e, order)


def _coeff_r(k: tuple[int, ...], r: int) -> int:
    """r-th coefficient of prod_{d<=r} (1 - x^d)^(k[d-1])."""
    prod = (1,) + (0,) * r
    for d, e in enumerate(k, start=1):
        if e:
            prod = _mul_trunc(prod, _binpow_cached(d, e, r))
    return prod[r]


def _h_fast_engine(r: int, n: int, cap: int, want_witness: bool):
    groups = _grouped_contributions(n, r)
    stages = _minkowski_stages(groups, r, cap)
    best_val = -1
    best_k = None
    for k in sorted(stages[-1]):
        v = abs(_coeff_r(k, r))
        if v > best_val:
            best_val, best_k = v, k
    if not want_witness:
        return best_val, ()
    chosen: list[int] = []
    k = best_k
    for (v, members), prev in zip(reversed(groups), reversed(stages[:-1])):
        for t in range(len(members) + 1):
            back = tuple(a - t * b for a, b in zip(k, v))
            if back in prev:
                chosen.extend(members[:t])
                k = back
                break
        else:
            raise AssertionError("exponent-vector backtrack failed")
    return best_val, tuple(sorted(chosen))


def h_fast(r: int, n: int, *, cap: int = DEFAULT_REACHABLE_CAP) -> HResult:
    """H(r, n) via the reachable exponent-vector maximization.

    Must agree with h_bruteforce wherever the latter is computable; the
    witness is rebuilt by backtracking the Minkowski stages (smallest member
    count per group, so output is deterministic).
    """
    _check_rn(r, n)
    value, witness = _h_fast_engine(r, n, cap, want_witness=True)
    return HResult(r, n, value, witness, "exponent_dp")


def _h_value(r: int, n: int, cap: int = DEFAULT_REACHABLE_CAP) -> int:
    # Witness-free variant for bulk partial sums.
    value, _ = _h_fast_engine(r, n, cap, want_witness=False)
    return value


# ---------------------------------------------------------------------------
# explicit bounds


def negative_mobius_witness(r: int, n: int) -> tuple[tuple[int, ...], int]:
    """The divisor subset {m | n : mu(m) = -1} and the exact r-th coefficient
    of its product; its absolute value is a lower bound for H(r, n)."""
    _check_rn(r, n)
    if n == 1:
        raise ValueError("witness subset needs n > 1")
    f = factorize(n)
    subset = tuple(m for m in divisors(f) if mobius(factorize(m)) == -1)
    poly = divisor_subset_poly(subset, n, r)
    return subset, poly.coeffs[r]


def upper_bound_explicit(r: int, n: int) -> int:
    """r-th coefficient of prod_{d<=r} (1 - x^d)^(-2^(nu(n)-1)).

    Every subset product is dominated by this series, so it bounds H(r, n)
    from above.
    """
    _check_rn(r, n)
    if n == 1:
        raise ValueError("explicit upper bound needs n > 1")
    k = 1 << (factorize(n).nu - 1)
    prod = (1,) + (0,) * r
    for d in range(1, r + 1):
        prod = _mul_trunc(prod, _binpow_cached(d, -k, r))
    return prod[r]
