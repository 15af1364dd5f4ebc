"""Accumulating remainder trees and forests.

Given a row vector V, matrices M_0, M_1, ... and moduli m_1, m_2, ...
(pairwise coprime, almost all equal to 1), these routines deliver
V * M_0 * ... * M_{k-1} mod m_k for every position k with m_k > 1.

``remainder_tree`` is the direct divide-and-conquer: pair up matrices
and moduli, recurse on the half-length problem, then fix up odd and even
positions.  ``remainder_forest`` splits the positions into 2^kappa
contiguous subtrees, holding only one subtree's product tree in memory
at a time plus a running prefix vector reduced modulo the product of the
still-unserved moduli.  Both produce identical output; the forest is the
one to use for large ranges.

Matrices are nested row lists whose entries may be ints or gmpy2 mpz;
products are exact integers until a reduction is applied.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from gmpy2 import mpz

from .recurrence import TransitionContext, transition_matrix

Matrix = Sequence[Sequence[int]]

_ONE = mpz(1)


def _mat_mul(A: Matrix, B: Matrix) -> list[list]:
    cols = len(B[0])
    out = []
    for Ai in A:
        row = [0] * cols
        for t, a in enumerate(Ai):
            if a:
                Bt = B[t]
                for j in range(cols):
                    row[j] += a * Bt[j]
        out.append(row)
    return out


def _vec_mat(v: Sequence[int], B: Matrix) -> list:
    cols = len(B[0])
    row = [0] * cols
    for t, a in enumerate(v):
        if a:
            Bt = B[t]
            for j in range(cols):
                row[j] += a * Bt[j]
    return row


def _vec_mod(v: Iterable[int], m) -> list:
    return [x % m for x in v]


# --- plain remainder tree ---------------------------------------------------

def remainder_tree(
    V: Sequence[int], M: Sequence[Matrix], mods: Sequence[int]
) -> dict[int, list[int]]:
    """Reduced prefix products by halving.

    Returns {k: V*M_0*...*M_{k-1} mod m_k} for 1-based positions k with
    mods[k-1] > 1.  Positions with modulus 1 contribute their matrix to
    the products but are omitted from the output.
    """
    n = len(M)
    if len(mods) != n:
        raise ValueError(f"{n} matrices but {len(mods)} moduli")
    r = len(V)
    for A in M:
        if len(A) != r or any(len(row) != r for row in A):
            raise ValueError("matrix dimensions do not match the vector")
    dense = _tree_rec(list(V), list(M), [mpz(m) for m in mods])
    return {
        k + 1: [int(x) for x in dense[k]] for k in range(n) if mods[k] > 1
    }


def _tree_rec(V, mats, mods):
    n = len(mats)
    if n == 0:
        return []
    if all(m == 1 for m in mods):
        return [[0] * len(V)] * n
    if n == 1:
        return [_vec_mod(_vec_mat(V, mats[0]), mods[0])]
    # Pair with a shift (B_0 = M_0, B_k = M_{2k-1} M_{2k}) so each leaf's
    # own matrix is applied by the fix-up below, never inside a product.
    half_mats = [mats[0]]
    half_mods = []
    for k in range(0, n, 2):
        if k:
            half_mats.append(_mat_mul(mats[k - 1], mats[k]))
        half_mods.append(mods[k] * mods[k + 1] if k + 1 < n else mods[k])
    C = _tree_rec(V, half_mats, half_mods)
    out = []
    for t in range(n):
        k = t // 2
        if t % 2 == 0:
            out.append(_vec_mod(C[k], mods[t]))
        else:
            out.append(_vec_mod(_vec_mat(C[k], mats[t]), mods[t]))
    return out


# --- moduli schedules --------------------------------------------------------

@dataclass(frozen=True)
class ModuliSchedule:
    """Sparse view of the moduli sequence m_1..m_length.

    ``by_index`` maps a position k to its (prime) modulus; all other
    positions have modulus 1.  ``index_of`` is the inverse.  A prime
    whose product is empty (zero matrix factors) sits at position 0 in
    ``index_of`` and is recorded as ``zero_prime``.
    """

    length: int
    by_index: dict[int, int]
    index_of: dict[int, int]
    zero_prime: int | None = None

    def modulus_at(self, k: int) -> int:
        return self.by_index.get(k, 1)

    def last_index(self) -> int:
        return max(self.by_index) if self.by_index else 0

    @staticmethod
    def from_moduli(mods: Sequence[int]) -> "ModuliSchedule":
        by_index = {k + 1: m for k, m in enumerate(mods) if m > 1}
        return ModuliSchedule(
            length=len(mods),
            by_index=by_index,
            index_of={m: k for k, m in by_index.items()},
        )


def moduli_schedule(
    j: int, ell: int, c: int, m: int, N: int, P: Iterable[int]
) -> ModuliSchedule:
    """Position each prime of P so the prefix product delivered to it has
    exactly s = p - 1 - c*n factors: k(p) = p - 1 when c = 0 and
    k(p) = (jp - ell)/m when c = 1."""
    if c not in (0, 1):
        raise ValueError("c must be 0 or 1")
    length = N if c == 0 else (j * N - ell) // m
    by_index: dict[int, int] = {}
    index_of: dict[int, int] = {}
    zero_prime = None
    for p in P:
        if (j * p - ell) % m != 0:
            raise ValueError(f"prime {p} violates {j}*p = {ell} mod {m}")
        k = p - 1 if c == 0 else (j * p - ell) // m
        if k == 0:
            if zero_prime is not None:
                raise ValueError("two primes with an empty product")
            zero_prime = p
            index_of[p] = 0
            continue
        if k > length:
            raise ValueError(f"position {k} for prime {p} exceeds N' = {length}")
        by_index[k] = p
        index_of[p] = k
    return ModuliSchedule(length, by_index, index_of, zero_prime)


@dataclass(frozen=True)
class ForestPlan:
    """kappa: number of subtree-split levels (None picks the default
    2*log2 log2 N' rule).  chunk: batch size for leaf generation."""

    kappa: int | None = None
    chunk: int = 1 << 14

    def resolved_kappa(self, length: int) -> int:
        cap = max(0, math.ceil(math.log2(length))) if length > 1 else 0
        if self.kappa is not None:
            if self.kappa < 0:
                raise ValueError("kappa must be nonnegative")
            return min(self.kappa, cap)
        if length < 4:
            return 0
        return min(math.ceil(2 * math.log2(math.log2(length))), cap)


def factorial_extension(ctx: TransitionContext, i: int) -> list[list[int]]:
    """Transition matrix with one extra trailing diagonal entry i+1, so
    that products carry k! alongside the window vector."""
    M = transition_matrix(ctx, i)
    r = ctx.r
    for row in M:
        row.append(0)
    M.append([0] * r + [i + 1])
    return M


# --- remainder forest ---------------------------------------------------------

def _generate(gen: Callable[[int, int], Sequence[Matrix]], lo, hi, batch):
    mats: list[Matrix] = []
    for b in range(lo, hi, batch):
        mats.extend(gen(b, min(b + batch, hi)))
    if len(mats) != hi - lo:
        raise ValueError("leaf generator returned the wrong number of matrices")
    return mats


def _product_levels(leaves: list) -> list[list]:
    levels = [leaves]
    while len(levels[-1]) > 1:
        prev = levels[-1]
        cur = [
            _mat_mul(prev[q], prev[q + 1]) for q in range(0, len(prev) - 1, 2)
        ]
        if len(prev) % 2:
            cur.append(prev[-1])
        levels.append(cur)
    return levels


def _moduli_levels(leaves: list) -> list[list]:
    levels = [leaves]
    while len(levels[-1]) > 1:
        prev = levels[-1]
        cur = [prev[q] * prev[q + 1] for q in range(0, len(prev) - 1, 2)]
        if len(prev) % 2:
            cur.append(prev[-1])
        levels.append(cur)
    return levels


def _descend(levels, mlevels, W, base_pos, out):
    """Walk one subtree: at a node spanning positions [a, b), W holds the
    prefix V*A[0..a) reduced mod the node's moduli product."""
    stack = [(len(levels) - 1, 0, W)]
    while stack:
        lev, idx, W = stack.pop()
        if lev == 0:
            mu = mlevels[0][idx]
            row = _vec_mod(_vec_mat(W, levels[0][idx]), mu)
            out[base_pos + idx] = [int(x) for x in row]
            continue
        c0 = 2 * idx
        c1 = c0 + 1
        if c1 >= len(levels[lev - 1]):
            stack.append((lev - 1, c0, W))
            continue
        P0 = mlevels[lev - 1][c0]
        P1 = mlevels[lev - 1][c1]
        if P1 > 1:
            stack.append((lev - 1, c1, _vec_mod(_vec_mat(W, levels[lev - 1][c0]), P1)))
        if P0 > 1:
            stack.append((lev - 1, c0, _vec_mod(W, P0)))


def remainder_forest(
    V: Sequence[int],
    gen: Callable[[int, int], Sequence[Matrix]],
    sched: ModuliSchedule,
    plan: ForestPlan = ForestPlan(),
) -> dict[int, list[int]]:
    """Chunked remainder tree over the schedule's positions.

    ``gen(lo, hi)`` must return the matrices M_lo..M_{hi-1}; it is called
    one subtree at a time so leaves never exist all at once.  Output maps
    each scheduled position k (and 0 for a zero-position prime) to
    V*M_0*...*M_{k-1} mod m_k.
    """
    out: dict[int, list[int]] = {}
    if sched.zero_prime is not None:
        out[0] = [int(v % sched.zero_prime) for v in V]
    n = sched.last_index()
    if n == 0:
        return out
    kappa = plan.resolved_kappa(sched.length)
    nchunks = min(1 << kappa, n)
    bounds = [(n * t) // nchunks for t in range(nchunks + 1)]

    chunk_prods = []
    for t in range(nchunks):
        prod = _ONE
        for k in range(bounds[t] + 1, bounds[t + 1] + 1):
            mu = sched.by_index.get(k)
            if mu is not None:
                prod = prod * mu
        chunk_prods.append(prod)
    suffix = [_ONE] * (nchunks + 1)
    for t in range(nchunks - 1, -1, -1):
        suffix[t] = chunk_prods[t] * suffix[t + 1]

    W = [mpz(v) % suffix[0] for v in V]
    for t in range(nchunks):
        lo, hi = bounds[t], bounds[t + 1]
        mats = _generate(gen, lo, hi, plan.chunk)
        levels = _product_levels(mats)
        if chunk_prods[t] > 1:
            mleaves = [mpz(sched.by_index.get(k, 1)) for k in range(lo + 1, hi + 1)]
            mlevels = _moduli_levels(mleaves)
            _descend(levels, mlevels, _vec_mod(W, chunk_prods[t]), lo + 1, out)
        if t + 1 < nchunks:
            W = _vec_mod(_vec_mat(W, levels[-1][0]), suffix[t + 1])
    return out
