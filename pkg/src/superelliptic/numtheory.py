"""Prime enumeration and scalar arithmetic modulo primes."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

_SEGMENT = 1 << 20


@dataclass(frozen=True)
class PrimeSet:
    """All primes up to ``bound``, in increasing order.

    Primes are held in a compact int64 array so that bounds up to 2^30
    stay within a few hundred MB.
    """

    bound: int
    primes: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.primes.setflags(write=False)

    def __len__(self) -> int:
        return int(self.primes.size)

    def __iter__(self):
        return (int(p) for p in self.primes)

    def __contains__(self, p: int) -> bool:
        i = int(np.searchsorted(self.primes, p))
        return i < self.primes.size and int(self.primes[i]) == p


def _small_primes(limit: int) -> np.ndarray:
    """Plain Eratosthenes sieve up to ``limit`` inclusive."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    is_comp = np.zeros(limit + 1, dtype=bool)
    is_comp[:2] = True
    for q in range(2, int(limit**0.5) + 1):
        if not is_comp[q]:
            is_comp[q * q :: q] = True
    return np.flatnonzero(~is_comp).astype(np.int64)


def sieve_primes(N: int, segment_size: int = _SEGMENT) -> PrimeSet:
    """Enumerate all primes <= N with a segmented sieve.

    Only O(sqrt(N) + segment_size) working memory is used beyond the
    output array, so N up to 2^30 is fine.
    """
    if N < 1:
        raise ValueError("N must be a positive integer")
    if N < 4:
        base = _small_primes(N)
        return PrimeSet(N, base)
    root = int(N**0.5)
    while (root + 1) * (root + 1) <= N:
        root += 1
    base = _small_primes(root)
    chunks = [base]
    lo = root + 1
    while lo <= N:
        hi = min(lo + segment_size, N + 1)
        seg = np.ones(hi - lo, dtype=bool)
        for q in base:
            q = int(q)
            start = ((lo + q - 1) // q) * q
            seg[start - lo :: q] = False
        chunks.append((np.flatnonzero(seg) + lo).astype(np.int64))
        lo = hi
    return PrimeSet(N, np.concatenate(chunks))


def mod_inv(a: int, p: int) -> int:
    """Inverse of a modulo p.  Raises if a is divisible by p."""
    a %= p
    if a == 0:
        raise ValueError(f"{a} is not invertible modulo {p}")
    return pow(a, -1, p)


def mod_pow(a: int, e: int, p: int) -> int:
    """a^e mod p, where a negative e means the inverse raised to |e|."""
    a %= p
    if e < 0:
        if a == 0:
            raise ValueError(f"negative power of 0 modulo {p}")
        return pow(pow(a, -1, p), -e, p)
    return pow(a, e, p)
