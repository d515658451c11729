"""Average-order statistics: the Euler-product constant, exact partial sums
of H(r, n) and of 2^(r nu(n)), and convergence report tables.

The partial sums satisfy

    sum_{n<=x} 2^(r nu(n))  ~  g(1) x (log x)^(2^r - 1) / (2^r - 1)!
    sum_{n<=x} H(r, n)      ~  c(r) x (log x)^(2^r - 1)

with g(1) = prod_p (1 + (2^r - 1)/p) (1 - 1/p)^(2^r - 1) and
c(r) = g(1) / ((2^r - 1)! 2^r r!).  log is the natural logarithm.
Convergence is slow (powers of log x), so reports carry ratios for
inspection; only identities and rigorous bounds are ever hard asserts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath as mp
import numpy as np

from .arith import NuSieve, primes, sieve_nu
from .hmax import DEFAULT_REACHABLE_CAP, _h_value

DEFAULT_PRIME_LIMIT = 1_000_000

# Working precision for the log-space product; published values carry at
# least 30 significant digits.
_WORK_DPS = 50


@dataclass(frozen=True)
class EulerProductEstimate:
    """Finite Euler product with a rigorous bound on |log(true/computed)|."""

    r: int
    prime_limit: int
    value: mp.mpf
    tail_bound: float
    constant_kind: str  # "g_at_1" | "c_of_r"


@dataclass(frozen=True)
class SumRow:
    """One checkpoint of a partial-sum table; total is exact."""

    x: int
    total: int
    leading: float
    ratio: float


@dataclass(frozen=True)
class PartialSumReport:
    """Partial sums of one summand kind against the predicted leading term."""

    r: int
    summand_kind: str  # "h" | "nu"
    prime_limit: int
    rows: tuple[SumRow, ...]


@lru_cache(maxsize=64)
def euler_product(r: int, prime_limit: int) -> EulerProductEstimate:
    """prod_{p <= prime_limit} (1 + (2^r - 1)/p)(1 - 1/p)^(2^r - 1).

    Accumulated in log-space at 50 decimal digits.  With a = 2^r - 1, each
    omitted factor satisfies |log((1 + a/p)(1 - 1/p)^a)| <= a(a+1)/p^2 once
    p > 2a (docs/math_notes.md derives this), so the tail over p > prime_limit
    is below a(a+1)/prime_limit; prime_limit must exceed 2a for the envelope
    to cover the whole tail.  The envelope is re-checked per factor.
    """
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    a = (1 << r) - 1
    if prime_limit <= 2 * a:
        raise ValueError(
            f"prime_limit must exceed 2*(2^r - 1) = {2 * a}, got {prime_limit}"
        )
    with mp.workdps(_WORK_DPS):
        log_total = mp.mpf(0)
        one = mp.mpf(1)
        for p in primes(prime_limit):
            p = int(p)
            factor = (1 + mp.mpf(a) / p) * (1 - one / p) ** a
            if not factor < 1:
                raise AssertionError(f"Euler factor at p={p} not below 1")
            lf = mp.log(factor)
            if p > 2 * a and not abs(lf) <= mp.mpf(a * (a + 1)) / (p * p):
                raise AssertionError(f"log-factor envelope violated at p={p}")
            log_total += lf
        value = mp.exp(log_total)
    tail_bound = a * (a + 1) / prime_limit
    return EulerProductEstimate(r, prime_limit, value, tail_bound, "g_at_1")


def _normalizer(r: int) -> int:
    return math.factorial((1 << r) - 1) * (1 << r) * math.factorial(r)


@lru_cache(maxsize=64)
def c_of_r(r: int, prime_limit: int) -> EulerProductEstimate:
    """The average-order constant c(r) = g(1) / ((2^r - 1)! 2^r r!)."""
    base = euler_product(r, prime_limit)
    with mp.workdps(_WORK_DPS):
        value = base.value / _normalizer(r)
    return EulerProductEstimate(r, prime_limit, value, base.tail_bound, "c_of_r")


def _leading_constant(r: int, kind: str, prime_limit: int) -> mp.mpf:
    if kind == "nu":
        with mp.workdps(_WORK_DPS):
            return euler_product(r, prime_limit).value / math.factorial((1 << r) - 1)
    if kind == "h":
        return c_of_r(r, prime_limit).value
    raise ValueError(f"unknown summand kind {kind!r}")


def _leading_term(constant: mp.mpf, r: int, x: int) -> float:
    with mp.workdps(_WORK_DPS):
        return float(constant * x * mp.log(x) ** ((1 << r) - 1))


def _row(r: int, x: int, total: int, constant: mp.mpf) -> SumRow:
    leading = _leading_term(constant, r, x)
    with mp.workdps(_WORK_DPS):
        ratio = float(mp.mpf(total) / leading)
    return SumRow(x, total, leading, ratio)


def _two_pow_nu_sum(sieve: NuSieve, r: int, x: int) -> int:
    counts = np.bincount(sieve.values[1 : x + 1])
    return sum(int(c) << (r * v) for v, c in enumerate(counts) if c)


def partial_sum_two_pow_nu(
    r: int,
    x: int,
    *,
    sieve: NuSieve | None = None,
    prime_limit: int = DEFAULT_PRIME_LIMIT,
) -> SumRow:
    """Exact sum of 2^(r nu(n)) over n <= x, with its predicted leading term."""
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    if x < 2:
        raise ValueError(f"x must be >= 2, got {x}")
    if sieve is None:
        sieve = sieve_nu(x)
    elif sieve.limit < x:
        raise ValueError(f"sieve limit {sieve.limit} below x = {x}")
    total = _two_pow_nu_sum(sieve, r, x)
    return _row(r, x, total, _leading_constant(r, "nu", prime_limit))


def _h_range_sum(r: int, lo: int, hi: int, cap: int) -> int:
    return sum(_h_value(r, n, cap) for n in range(lo, hi + 1))


def _h_sums_at(r, checkpoints, cap, jobs):
    """Cumulative sums of H(r, n) at each checkpoint, exactly.

    Work is chunked by range; integer addition makes the reduction
    independent of chunking, so any jobs count gives identical sums.
    """
    bounds = [1] + list(checkpoints)
    segments = [
        (bounds[i] + (1 if i else 0), bounds[i + 1]) for i in range(len(checkpoints))
    ]
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        chunks = []
        for seg_idx, (lo, hi) in enumerate(segments):
            step = max(1, (hi - lo + 1) // (4 * jobs))
            s = lo
            while s <= hi:
                e = min(s + step - 1, hi)
                chunks.append((seg_idx, s, e))
                s = e + 1
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(
                pool.map(_h_range_sum, *zip(*((r, s, e, cap) for _, s, e in chunks)))
            )
        seg_totals = [0] * len(segments)
        for (seg_idx, _, _), part in zip(chunks, parts):
            seg_totals[seg_idx] += part
    else:
        seg_totals = [_h_range_sum(r, lo, hi, cap) for lo, hi in segments]
    out = []
    run = 0
    for t in seg_totals:
        run += t
        out.append(run)
    return out


def partial_sum_H(
    r: int,
    x: int,
    *,
    prime_limit: int = DEFAULT_PRIME_LIMIT,
    cap: int = DEFAULT_REACHABLE_CAP,
    jobs: int = 1,
) -> SumRow:
    """Exact sum of H(r, n) over n <= x, with its predicted leading term."""
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    if x < 2:
        raise ValueError(f"x must be >= 2, got {x}")
    (total,) = _h_sums_at(r, [x], cap, jobs)
    return _row(r, x, total, _leading_constant(r, "h", prime_limit))


def convergence_report(
    r: int,
    checkpoints,
    *,
    kinds=("nu", "h"),
    prime_limit: int = DEFAULT_PRIME_LIMIT,
    cap: int = DEFAULT_REACHABLE_CAP,
    jobs: int = 1,
) -> list[PartialSumReport]:
    """Partial-sum tables at each checkpoint for the requested summand kinds."""
    checkpoints = list(checkpoints)
    if any(x < 2 for x in checkpoints):
        raise ValueError("checkpoints must all be >= 2")
    if any(b <= a for a, b in zip(checkpoints, checkpoints[1:])):
        raise ValueError("checkpoints must be strictly increasing")
    reports = []
    for kind in kinds:
        if kind not in ("nu", "h"):
            raise ValueError(f"unknown summand kind {kind!r}")
        constant = _leading_constant(r, kind, prime_limit)
        if not checkpoints:
            reports.append(PartialSumReport(r, kind, prime_limit, ()))
            continue
        if kind == "nu":
            sieve = sieve_nu(checkpoints[-1])
            totals = [_two_pow_nu_sum(sieve, r, x) for x in checkpoints]
        else:
            totals = _h_sums_at(r, checkpoints, cap, jobs)
        rows = tuple(_row(r, x, t, constant) for x, t in zip(checkpoints, totals))
        reports.append(PartialSumReport(r, kind, prime_limit, rows))
    return reports
