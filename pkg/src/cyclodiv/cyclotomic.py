"""Cyclotomic polynomials, two independent ways.

The truncated path builds delta(m) * Phi_m mod x^(order+1) directly from the
signed-binomial product over divisors d <= order, so huge m stays cheap: a
factor (1 - x^d)^mu(m/d) with d > order is congruent to 1 and never enters.

The full path computes the complete Phi_m by repeated exact division of
x^m - 1 by Phi_d over proper divisors d.  It is deliberately a separate code
path so the two can check each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .arith import cofactor_mobius, divisors, factorize
from .series import TruncatedSeries, _binomial_power_coeffs, _mul_trunc

# The full-polynomial oracle is desk-scale only: the dense coefficient lists
# and the divide-down construction get expensive past this point.
MAX_FULL_M = 100_000

# Machine-width fast path for dense polynomial division/multiplication.
# Guarded so int64 intermediates provably cannot wrap; see _poly_divexact.
_INT64_COEFF_GUARD = 1 << 20


@dataclass(frozen=True)
class CyclotomicTruncated:
    """delta(m) * Phi_m(x) mod x^(order+1); constant term is always 1."""

    m: int
    series: TruncatedSeries


@lru_cache(maxsize=262144)
def _truncated_coeffs(m: int, order: int) -> tuple[int, ...]:
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    f = factorize(m)
    out = (1,) + (0,) * order
    for d in range(1, min(order, m) + 1):
        if m % d == 0:
            mu = cofactor_mobius(f, d)
            if mu:
                out = _mul_trunc(out, _binomial_power_coeffs(d, mu, order))
    return out


def cyclotomic_truncated(m: int, order: int) -> CyclotomicTruncated:
    """delta(m) * Phi_m mod x^(order+1) via the signed-binomial product."""
    return CyclotomicTruncated(m, TruncatedSeries(order, _truncated_coeffs(m, order)))


def _fits_int64(coeffs, bound: int) -> bool:
    return all(-bound < c < bound for c in coeffs)


def _poly_divexact(num: list[int], den) -> list[int]:
    """Exact division of polynomials with int coefficients; den must be monic.

    Runs on int64 arrays when every emitted quotient coefficient stays under
    _INT64_COEFF_GUARD (checked per step), in which case intermediates are
    bounded by len * guard^2 << 2^63.  Falls back to Python ints otherwise;
    both paths produce identical integers.
    """
    qlen = len(num) - len(den) + 1
    if qlen <= 0:
        raise ValueError("degree of numerator below degree of denominator")
    if den[-1] != 1:
        raise ValueError("denominator must be monic")

    if (
        len(num) * _INT64_COEFF_GUARD * _INT64_COEFF_GUARD < (1 << 62)
        and _fits_int64(num, _INT64_COEFF_GUARD)
        and _fits_int64(den, _INT64_COEFF_GUARD)
    ):
        a = np.array(num, dtype=np.int64)
        b = np.array(den, dtype=np.int64)
        q = np.zeros(qlen, dtype=np.int64)
        k = len(den)
        ok = True
        for i in range(qlen - 1, -1, -1):
            c = int(a[i + k - 1])
            if not -_INT64_COEFF_GUARD < c < _INT64_COEFF_GUARD:
                ok = False
                break
            if c:
                q[i] = c
                a[i : i + k] -= c * b
        if ok:
            if a.any():
                raise ArithmeticError("nonzero remainder in exact polynomial division")
            return [int(v) for v in q]

    a = list(num)
    q = [0] * qlen
    k = len(den)
    for i in range(qlen - 1, -1, -1):
        c = a[i + k - 1]
        if c:
            q[i] = c
            for j, bj in enumerate(den):
                if bj:
                    a[i + j] -= c * bj
    if any(a):
        raise ArithmeticError("nonzero remainder in exact polynomial division")
    return q


def _poly_mul(a, b) -> list[int]:
    """Exact dense polynomial product (int64 fast path, exact fallback)."""
    ha = max(abs(c) for c in a) if a else 0
    hb = max(abs(c) for c in b) if b else 0
    if ha and hb and ha * hb * min(len(a), len(b)) < (1 << 62):
        return [int(v) for v in np.convolve(np.array(a, np.int64), np.array(b, np.int64))]
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return out


@lru_cache(maxsize=4096)
def _full_coeffs(m: int) -> tuple[int, ...]:
    if m == 1:
        return (-1, 1)
    num = [0] * (m + 1)
    num[0] = -1
    num[m] = 1
    proper = [d for d in divisors(factorize(m)) if d != m]
    # Divide by the largest factors first so the working degree drops fastest.
    dens = sorted((_full_coeffs(d) for d in proper), key=len, reverse=True)
    for den in dens:
        num = _poly_divexact(num, den)
    return tuple(num)


def cyclotomic_full(m: int) -> list[int]:
    """Exact coefficients of Phi_m (degree phi(m)), low order first.

    Independent oracle for the truncated path; supports m <= MAX_FULL_M.
    The per-m cache is bounded and safe under the GIL: concurrent calls
    always return identical values.
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    if m > MAX_FULL_M:
        raise ValueError(f"cyclotomic_full supports m <= {MAX_FULL_M}, got {m}")
    return list(_full_coeffs(m))
