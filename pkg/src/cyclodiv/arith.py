"""Integer arithmetic groundwork: factorization, divisors, Mobius, sieves.

Everything here is exact and deterministic.  Factorization uses plain trial
division, which is fine for the intended desk scale (single calls up to
about 10^9; sweep workloads stay far below that).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import SieveLimitError

# One byte per entry; 2*10^8 entries ~ 200 MB, a sane desk-machine ceiling.
MAX_SIEVE_LIMIT = 200_000_000


@dataclass(frozen=True)
class Factorization:
    """Prime factorization of n as an ordered tuple of (prime, exponent)."""

    n: int
    factors: tuple[tuple[int, int], ...]

    @property
    def nu(self) -> int:
        """Number of distinct prime divisors."""
        return len(self.factors)

    @property
    def tau(self) -> int:
        """Number of divisors."""
        return math.prod(e + 1 for _, e in self.factors)


def factorize(n: int) -> Factorization:
    """Factor n >= 1 by trial division (2, then odd candidates up to sqrt)."""
    if n < 1:
        raise ValueError(f"factorize requires n >= 1, got {n}")
    m = n
    factors = []
    e = 0
    while m % 2 == 0:
        m //= 2
        e += 1
    if e:
        factors.append((2, e))
    d = 3
    while d * d <= m:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            factors.append((d, e))
        d += 2
    if m > 1:
        factors.append((m, 1))
    return Factorization(n, tuple(factors))


def divisors(f: Factorization) -> list[int]:
    """All divisors of f.n in increasing order."""
    divs = [1]
    for p, e in f.factors:
        pk = 1
        block = []
        for _ in range(e):
            pk *= p
            block.extend(d * pk for d in divs)
        divs.extend(block)
    divs.sort()
    return divs


def mobius(f: Factorization) -> int:
    """Mobius function: 0 unless squarefree, else (-1)^(number of primes)."""
    if any(e >= 2 for _, e in f.factors):
        return 0
    return -1 if f.nu % 2 else 1


def cofactor_mobius(f: Factorization, d: int) -> int:
    """Mobius of n/d given the factorization of n.  Requires d | n."""
    sign = 1
    rem = {p: e for p, e in f.factors}
    for p, e in factorize(d).factors:
        rem[p] -= e
    for e in rem.values():
        if e >= 2:
            return 0
        if e == 1:
            sign = -sign
    return sign


def delta(n: int) -> int:
    """Sign normalizer: -1 for n = 1, +1 for n > 1.

    delta(n) * Phi_n(x) always has constant term 1.
    """
    if n < 1:
        raise ValueError(f"delta requires n >= 1, got {n}")
    return -1 if n == 1 else 1


def primes(limit: int) -> np.ndarray:
    """Primes up to limit (inclusive) via a boolean Eratosthenes sieve."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    is_p = np.ones(limit + 1, dtype=bool)
    is_p[:2] = False
    for i in range(2, math.isqrt(limit) + 1):
        if is_p[i]:
            is_p[i * i :: i] = False
    return np.nonzero(is_p)[0].astype(np.int64)


@dataclass(frozen=True, eq=False)
class NuSieve:
    """values[n] = number of distinct prime divisors of n, for 1 <= n <= limit.

    Stored one byte per entry (nu(n) <= 9 below 10^9); index 0 is unused.
    Immutable after construction, safe to share across workers.
    """

    limit: int
    values: np.ndarray

    def __getitem__(self, n: int) -> int:
        if not 1 <= n <= self.limit:
            raise IndexError(f"n = {n} outside sieve range 1..{self.limit}")
        return int(self.values[n])


def sieve_nu(limit: int) -> NuSieve:
    """Additive sieve for nu(n) up to limit; O(limit log log limit)."""
    if limit < 1:
        raise ValueError(f"sieve_nu requires limit >= 1, got {limit}")
    if limit > MAX_SIEVE_LIMIT:
        raise SieveLimitError(limit, MAX_SIEVE_LIMIT)
    values = np.zeros(limit + 1, dtype=np.uint8)
    for p in primes(limit):
        values[p::p] += 1
    return NuSieve(limit, values)
