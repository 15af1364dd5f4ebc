"""Transition matrices for coefficient windows of powers of a polynomial.

For h of degree r with h(0) != 0, the coefficients of h^n satisfy
sum_{i=0}^{r} ((n+1)i - k) h_i h^n_{k-i} = 0, which lets the window
v_k = [h^n_{k-r+1}, ..., h^n_k] be advanced by a sparse integer matrix
that does not depend on the prime.  The product of s such matrices,
normalized by m^-s h_0^(n-s) / s!, yields the window v_s whose trailing
entries are the first row of one Cartier-Manin block.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from gmpy2 import mpz

from .numtheory import mod_inv, mod_pow


@dataclass(frozen=True)
class TransitionContext:
    """The data (h, m, l) a transition matrix is built from."""

    h: tuple[int, ...]
    m: int
    ell: int
    r: int = field(init=False)

    def __post_init__(self):
        if len(self.h) < 2:
            raise ValueError("h must have degree at least 1")
        if self.h[0] == 0:
            raise ValueError("h(0) must be nonzero")
        if self.h[-1] == 0:
            raise ValueError("leading coefficient of h is zero")
        object.__setattr__(self, "r", len(self.h) - 1)


def transition_matrix(ctx: TransitionContext, i: int) -> list[list[int]]:
    """The i-th factor of the window product (so the product over steps
    runs i = 0..s-1).  Nonzero entries: subdiagonal m*(i+1)*h_0 and last
    column (l*(r-t) - m*(i+1)) * h_{r-t} for row t."""
    if i < 0:
        raise ValueError("matrix index must be nonnegative")
    h, m, ell, r = ctx.h, ctx.m, ctx.ell, ctx.r
    ip = i + 1
    sub = m * ip * h[0]
    M = [[0] * r for _ in range(r)]
    for t in range(1, r):
        M[t][t - 1] = sub
    for t in range(r):
        M[t][r - 1] = (ell * (r - t) - m * ip) * h[r - t]
    return M


def transition_batch(
    ctx: TransitionContext, lo: int, hi: int, extended: bool = False
) -> list[list[list[mpz]]]:
    """Matrices for indices lo..hi-1 with gmpy2 entries, ready for the
    remainder forest.  With ``extended`` each factor carries an extra
    trailing diagonal entry i+1 so products accumulate the factorial."""
    h = [mpz(c) for c in ctx.h]
    m, ell, r = ctx.m, ctx.ell, ctx.r
    zero = mpz(0)
    n = r + 1 if extended else r
    last_col = [(ell * (r - t), h[r - t]) for t in range(r)]
    out = []
    for i in range(lo, hi):
        ip = i + 1
        mip = m * ip
        sub = mip * h[0]
        M = [[zero] * n for _ in range(n)]
        for t in range(1, r):
            M[t][t - 1] = sub
        for t, (lead, hc) in enumerate(last_col):
            M[t][r - 1] = (lead - mip) * hc
        if extended:
            M[r][r] = mpz(ip)
        out.append(M)
    return out


def product_single_prime(
    ctx: TransitionContext, s: int, p: int
) -> tuple[list[int], int]:
    """w = [0,...,0,1] * M_0 * ... * M_{s-1} mod p and u = s! mod p.

    Applies the sparse matrix action directly (shift plus a dot product
    against the last column), O(r) multiplications per step.
    """
    h = [c % p for c in ctx.h]
    m, ell, r = ctx.m % p, ctx.ell, ctx.r
    # last-column coefficient of row t is (ell*(r-t) - m*(i+1)) * h[r-t]:
    # split into a fixed part and a multiple of (i+1).
    fixed = [(ell * (r - t) % p) * h[r - t] % p for t in range(r)]
    vari = [h[r - t] for t in range(r)]
    w = [0] * (r - 1) + [1]
    u = 1
    h0 = h[0]
    for i in range(s):
        ip = (i + 1) % p
        a = m * ip % p
        b = a * h0 % p
        last = 0
        for t in range(r):
            wt = w[t]
            if wt:
                last += wt * (fixed[t] - a * vari[t])
        nw = [wi * b % p for wi in w[1:]]
        nw.append(last % p)
        w = nw
        u = u * ip % p
    return w, u


def normalize_row(
    w: Sequence[int], u: int, h0: int, m: int, n: int, s: int, p: int
) -> list[int]:
    """Scale the raw product by m^-s h_0^(n-s) u^-1 to recover the window
    [h^n_{s-r+1}, ..., h^n_s] mod p."""
    factor = mod_pow(m, -s, p) * mod_pow(h0, n - s, p) % p
    factor = factor * mod_inv(u, p) % p
    return [int(x) * factor % p for x in w]


def first_row(alpha: Sequence[int], d_ell: int) -> list[int]:
    """[alpha_r, alpha_{r-1}, ..., alpha_{r-d_ell+1}]: the first row of
    the block, since alpha_r = h^n_s = f^n_{p-1} and so on downwards."""
    r = len(alpha)
    if d_ell > r:
        raise ValueError(f"block width {d_ell} exceeds window length {r}")
    return [int(alpha[r - 1 - k]) for k in range(d_ell)]
