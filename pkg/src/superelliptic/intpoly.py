"""Exact arithmetic on univariate integer polynomials.

Coefficients are arbitrary-precision integers indexed by exponent, so
``coeffs[i]`` is the coefficient of x^i.  Everything here is exact; the
only modular object is :class:`ModPoly`, the reduction of a polynomial
at a prime, which backs the brute-force coefficient-of-a-power oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np


class ParseError(ValueError):
    """Syntax error in a polynomial expression, with position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


@dataclass(frozen=True)
class IntPoly:
    """Immutable integer polynomial; the zero polynomial has empty coeffs."""

    coeffs: tuple[int, ...]

    @staticmethod
    def of(coeffs: Sequence[int]) -> "IntPoly":
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        return IntPoly(tuple(int(c) for c in cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x: int) -> int:
        v = 0
        for c in reversed(self.coeffs):
            v = v * x + c
        return v

    def __add__(self, other: "IntPoly") -> "IntPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            a[i] += c
        return IntPoly.of(a)

    def __neg__(self) -> "IntPoly":
        return IntPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        if self.is_zero() or other.is_zero():
            return IntPoly(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly.of(out)

    def __pow__(self, e: int) -> "IntPoly":
        if e < 0:
            raise ValueError("negative polynomial power")
        r = IntPoly((1,))
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def derivative(self) -> "IntPoly":
        return IntPoly.of([i * c for i, c in enumerate(self.coeffs)][1:])

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                term = str(abs(c))
            else:
                mag = "" if abs(c) == 1 else f"{abs(c)}*"
                term = f"{mag}x" if i == 1 else f"{mag}x^{i}"
            parts.append(("-" if c < 0 else "+") if parts else ("-" if c < 0 else ""))
            parts.append(term)
        return "".join(parts)


# --- parsing --------------------------------------------------------------

def _tokenize(text: str):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j]), i))
            i = j
        elif ch == "x":
            tokens.append(("x", None, i))
            i += 1
        elif ch in "+-*^()":
            tokens.append((ch, None, i))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    """Recursive descent over: expr = term (+|- term)*, term = factor
    (('*'? ) factor)*, factor = ('-')* power, power = atom ('^' uint)?,
    atom = int | 'x' | '(' expr ')'.  Implicit multiplication ("4x",
    "2(x+1)") is accepted.
    """

    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expr(self) -> IntPoly:
        sign = 1
        while self.peek()[0] in "+-":
            if self.next()[0] == "-":
                sign = -sign
        v = self.term()
        if sign < 0:
            v = -v
        while self.peek()[0] in "+-":
            op = self.next()[0]
            t = self.term()
            v = v + t if op == "+" else v - t
        return v

    def term(self) -> IntPoly:
        v = self.factor()
        while True:
            kind = self.peek()[0]
            if kind == "*":
                self.next()
                v = v * self.factor()
            elif kind in ("int", "x", "("):
                v = v * self.factor()
            else:
                return v

    def factor(self) -> IntPoly:
        sign = 1
        while self.peek()[0] == "-":
            self.next()
            sign = -sign
        v = self.power()
        return -v if sign < 0 else v

    def power(self) -> IntPoly:
        base = self.atom()
        if self.peek()[0] == "^":
            self.next()
            kind, val, pos = self.peek()
            if kind != "int":
                raise ParseError("exponent must be a nonnegative integer", pos)
            self.next()
            return base**val
        return base

    def atom(self) -> IntPoly:
        kind, val, pos = self.next()
        if kind == "int":
            return IntPoly.of([val])
        if kind == "x":
            return IntPoly((0, 1))
        if kind == "(":
            v = self.expr()
            kind2, _, pos2 = self.next()
            if kind2 != ")":
                raise ParseError("expected ')'", pos2)
            return v
        raise ParseError(f"unexpected token {kind!r}", pos)


def parse_poly(text: str) -> IntPoly:
    """Parse an integer polynomial in x (operators + - * ^, parentheses)."""
    p = _Parser(_tokenize(text))
    v = p.expr()
    kind, _, pos = p.peek()
    if kind != "end":
        raise ParseError(f"unexpected token {kind!r}", pos)
    return v


# --- exact operations -----------------------------------------------------

def _sylvester_det(f: IntPoly, g: IntPoly) -> int:
    """Resultant of f and g as the Bareiss determinant of their Sylvester
    matrix.  Fraction-free: every intermediate entry is a minor, so growth
    stays polynomial in the input size."""
    n, m = f.degree, g.degree
    size = n + m
    if size == 0:
        return 1
    rows = []
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    for i in range(m):
        rows.append([0] * i + fc + [0] * (m - 1 - i))
    for i in range(n):
        rows.append([0] * i + gc + [0] * (n - 1 - i))
    a = [list(row) for row in rows]
    sign = 1
    prev = 1
    for k in range(size - 1):
        if a[k][k] == 0:
            for r in range(k + 1, size):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for r in range(k + 1, size):
            ark = a[r][k]
            row_r, row_k = a[r], a[k]
            for c in range(k + 1, size):
                row_r[c] = (row_r[c] * akk - ark * row_k[c]) // prev
            row_r[k] = 0
        prev = akk
    return sign * a[size - 1][size - 1]


def discriminant(f: IntPoly) -> int:
    """Exact discriminant: (-1)^(d(d-1)/2) * Res(f, f') / lc(f)."""
    if f.is_zero():
        raise ValueError("discriminant of the zero polynomial")
    d = f.degree
    if d < 1:
        raise ValueError("discriminant requires degree >= 1")
    fp = f.derivative()
    if fp.is_zero():
        return 0
    res = _sylvester_det(f, fp)
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    q, r = divmod(sign * res, f.lc)
    assert r == 0
    return q


def translate(f: IntPoly, a: int) -> IntPoly:
    """f(x + a), computed exactly by repeated synthetic division."""
    if f.is_zero() or a == 0:
        return f
    c = list(f.coeffs)
    n = len(c)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            c[j] += a * c[j + 1]
    return IntPoly.of(c)


def split_x_factor(f: IntPoly) -> tuple[int, IntPoly]:
    """Write f = x^c * h with c in {0,1} and h(0) != 0."""
    if f.is_zero():
        raise ValueError("cannot split the zero polynomial")
    if f.coeffs[0] != 0:
        return 0, f
    h = IntPoly(f.coeffs[1:])
    if h.is_zero() or h.coeffs[0] == 0:
        raise ValueError("x^2 divides f: polynomial is not squarefree")
    return 1, h


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    return out


def integer_roots(f: IntPoly) -> set[int]:
    """All integer roots of f (divisor candidates of the x-free constant)."""
    if f.is_zero():
        raise ValueError("every integer is a root of the zero polynomial")
    roots = set()
    c, h = (0, f) if f.coeffs[0] != 0 else (1, IntPoly(f.coeffs[1:]))
    if c:
        roots.add(0)
    if h.is_zero():
        return roots
    for d in _divisors(h.coeffs[0]):
        for cand in (d, -d):
            if h(cand) == 0:
                roots.add(cand)
    return roots


# --- modular polynomials ---------------------------------------------------

@dataclass(frozen=True)
class ModPoly:
    """A polynomial with coefficients reduced into [0, p-1]."""

    p: int
    coeffs: tuple[int, ...]

    @staticmethod
    def reduce(f: IntPoly, p: int) -> "ModPoly":
        return ModPoly(p, tuple(c % p for c in f.coeffs))


def _power_series_mod(coeffs: Sequence[int], n: int, p: int) -> np.ndarray | list[int]:
    """Coefficient array of f^n mod p via n successive multiplications.

    Uses int64 convolution when the accumulated dot products provably fit,
    otherwise exact Python integers.
    """
    d = len(coeffs) - 1
    if n == 0:
        return [1 % p]
    max_len = n * d + 1
    if max_len * (p - 1) * (p - 1) < 2**62:
        f = np.array([c % p for c in coeffs], dtype=np.int64)
        r = np.array([1], dtype=np.int64)
        for _ in range(n):
            r = np.convolve(r, f) % p
        return r
    f = [c % p for c in coeffs]
    r = [1]
    for _ in range(n):
        out = [0] * (len(r) + d)
        for i, a in enumerate(r):
            if a:
                for j, b in enumerate(f):
                    out[i + j] += a * b
        r = [v % p for v in out]
    return r


def pow_coeffs_mod(f: ModPoly, n: int, window: tuple[int, int]) -> list[int]:
    """Coefficients of f^n mod p on the inclusive index window [lo, hi].

    Brute-force oracle: repeated multiplication, no recurrences.  Indices
    outside [0, n*deg f] yield zeros.
    """
    lo, hi = window
    if lo < 0 or hi < lo:
        raise ValueError(f"bad window {window}")
    arr = _power_series_mod(f.coeffs, n, f.p)
    out = []
    for i in range(lo, hi + 1):
        out.append(int(arr[i]) if i < len(arr) else 0)
    return out
