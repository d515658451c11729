"""Error types shared across the package.

Usage errors (bad arguments) raise plain ValueError.  Resource-cap errors
derive from CapError so the CLI can map them to a distinct exit code.
"""


class CapError(RuntimeError):
    """A configured resource cap would be exceeded."""


class TooManyDivisorsError(CapError):
    """Subset enumeration refused: tau(n) exceeds the configured cap."""

    def __init__(self, n: int, tau: int, cap: int):
        self.n = n
        self.tau = tau
        self.cap = cap
        super().__init__(
            f"too many divisors: tau({n}) = {tau} exceeds cap {cap} "
            f"(2^{tau} subsets); raise the cap to force enumeration"
        )


class ReachableSetOverflowError(CapError):
    """Exponent-vector enumeration refused: reachable set grew past the cap."""

    def __init__(self, size: int, cap: int):
        self.size = size
        self.cap = cap
        super().__init__(
            f"reachable exponent-vector set grew to {size} members, over the cap {cap}"
        )


class SieveLimitError(CapError):
    """Sieve construction refused: limit exceeds the documented memory budget."""

    def __init__(self, limit: int, cap: int):
        self.limit = limit
        self.cap = cap
        super().__init__(
            f"sieve limit {limit} exceeds the supported maximum {cap} "
            f"(storage is one byte per integer)"
        )
