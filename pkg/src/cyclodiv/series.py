"""Exact truncated integer power series, i.e. polynomials mod x^(order+1).

Coefficients are Python ints, so arithmetic never overflows or rounds.
Orders stay tiny (r <= ~16), so schoolbook multiplication is the right tool.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb


@dataclass(frozen=True)
class TruncatedSeries:
    """Coefficients c_0..c_order of a power series mod x^(order+1)."""

    order: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.order < 0:
            raise ValueError(f"order must be >= 0, got {self.order}")
        if len(self.coeffs) != self.order + 1:
            raise ValueError(
                f"need {self.order + 1} coefficients for order {self.order}, "
                f"got {len(self.coeffs)}"
            )

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i]

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return ts_mul(self, other)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(self.order, tuple(-c for c in self.coeffs))


def ts_one(order: int) -> TruncatedSeries:
    """The multiplicative identity 1 truncated at the given order."""
    return TruncatedSeries(order, (1,) + (0,) * order)


def _mul_trunc(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    # Bare-tuple Cauchy product, shared by the hot enumeration paths.
    n = len(a)
    out = [0] * n
    for i, ai in enumerate(a):
        if ai:
            for j in range(n - i):
                bj = b[j]
                if bj:
                    out[i + j] += ai * bj
    return tuple(out)


def ts_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Product truncated at the common order; orders must match exactly."""
    if a.order != b.order:
        raise ValueError(f"order mismatch: {a.order} != {b.order}")
    return TruncatedSeries(a.order, _mul_trunc(a.coeffs, b.coeffs))


def _binomial_power_coeffs(d: int, e: int, order: int) -> tuple[int, ...]:
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    out = [0] * (order + 1)
    if e >= 0:
        for j in range(order // d + 1):
            out[d * j] = (-1) ** j * comb(e, j)
    else:
        k = -e
        for j in range(order // d + 1):
            out[d * j] = comb(k + j - 1, j)
    return tuple(out)


def binomial_power(d: int, e: int, order: int) -> TruncatedSeries:
    """(1 - x^d)^e mod x^(order+1), for any integer e.

    Negative e is the formal inverse (constant term 1 makes it exist):
    (1 - x^d)^(-k) = sum_j C(k+j-1, j) x^(dj).
    """
    return TruncatedSeries(order, _binomial_power_coeffs(d, e, order))


def dominated_by(f: TruncatedSeries, g: TruncatedSeries) -> bool:
    """True iff |f_i| <= g_i for every coefficient index."""
    if f.order != g.order:
        raise ValueError(f"order mismatch: {f.order} != {g.order}")
    return all(abs(fc) <= gc for fc, gc in zip(f.coeffs, g.coeffs))
