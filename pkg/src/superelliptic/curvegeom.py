"""Curve validation and the index bookkeeping behind the block structure.

A superelliptic curve y^m = f(x) with squarefree f of degree d >= 3 has
genus g = ((d-2)(m-1) + m - gcd(m,d)) / 2.  Its Cartier-Manin matrix
splits into mu x mu rectangular blocks, mu = m - floor(m/d) - 1, where
block row j has height d_j = d - floor(dj/m) - 1 and the only column
that can be nonzero for row j at a prime p is l = jp rem m (when <= mu).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .intpoly import IntPoly, discriminant


class CurveError(ValueError):
    """The pair (m, f) does not define a valid superelliptic curve."""


@dataclass(frozen=True)
class SuperellipticCurve:
    m: int
    f: IntPoly
    d: int
    genus: int
    bad_product: int

    def is_good_prime(self, p: int) -> bool:
        return self.bad_product % p != 0

    def __str__(self) -> str:
        return f"y^{self.m} = {self.f}"


@dataclass(frozen=True)
class BlockGeometry:
    """Block dimensions of the Cartier-Manin matrix.

    ``row_dims[j-1]`` is d_j for 1 <= j <= mu.  ``col_family_dims`` holds
    the dual dimensions m_i, recorded for verification only (the
    algorithms consume ``row_dims``).
    """

    mu: int
    row_dims: tuple[int, ...]
    col_family_dims: tuple[int, ...]

    @property
    def genus(self) -> int:
        return sum(self.row_dims)

    def row_offset(self, j: int) -> int:
        return sum(self.row_dims[: j - 1])


def genus_formula(m: int, d: int) -> int:
    num = (d - 2) * (m - 1) + m - math.gcd(m, d)
    assert num % 2 == 0
    return num // 2


def validate_curve(m: int, f: IntPoly) -> SuperellipticCurve:
    """Check (m, f) and compute genus and the bad-prime product."""
    if m < 2:
        raise CurveError(f"m must be at least 2, got {m}")
    d = f.degree
    if d < 3:
        raise CurveError(f"degree of f must be at least 3, got {d}")
    disc = discriminant(f)
    if disc == 0:
        raise CurveError("f is not squarefree (discriminant is zero)")
    return SuperellipticCurve(
        m=m,
        f=f,
        d=d,
        genus=genus_formula(m, d),
        bad_product=abs(m * f.lc * disc),
    )


def block_dims(m: int, d: int) -> BlockGeometry:
    if m < 2 or d < 3:
        raise ValueError("need m >= 2 and d >= 3")
    mu = m - m // d - 1
    row = tuple(d - (d * j) // m - 1 for j in range(1, mu + 1))
    d1 = d - d // m - 1
    col = tuple(m - (m * i) // d - 1 for i in range(1, d1 + 1))
    return BlockGeometry(mu=mu, row_dims=row, col_family_dims=col)


def block_target(j: int, p: int, m: int, mu: int) -> int | None:
    """Column index l = jp rem m of the only possibly-nonzero block in
    row j, or None when that residue falls outside [1, mu]."""
    ell = (j * p) % m
    if 1 <= ell <= mu:
        return ell
    return None


def exponents(j: int, ell: int, p: int, m: int, c: int) -> tuple[int, int]:
    """The power n = ((m-j)p - (m-ell))/m of f whose coefficients fill
    block (j, l), and the recurrence step count s = p - 1 - c*n."""
    num = (m - j) * p - (m - ell)
    n, rem = divmod(num, m)
    if rem != 0:
        raise ValueError(
            f"(j={j}, ell={ell}) is not the block target at p={p} mod {m}"
        )
    return n, p - 1 - c * n
