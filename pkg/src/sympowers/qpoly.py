"""Univariate polynomials over Q, as plain coefficient tuples.

Coefficient tuples are ordered from the constant term up and never carry
trailing zeros, so ``()`` is the zero polynomial and ``len(p) - 1`` is the
degree.  This tiny kernel backs the number-field layer: reduction tables,
extended gcd for inversion, the rational-root screen, and cyclotomic
polynomials.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Sequence

Poly = tuple[Fraction, ...]


def trim(coeffs: Sequence[Fraction]) -> Poly:
    """Drop trailing zeros; the zero polynomial becomes the empty tuple."""
    i = len(coeffs)
    while i > 0 and coeffs[i - 1] == 0:
        i -= 1
    return tuple(coeffs[:i])


def make(coeffs: Sequence[object]) -> Poly:
    return trim([Fraction(c) for c in coeffs])


def degree(p: Poly) -> int:
    return len(p) - 1


def add(p: Poly, q: Poly) -> Poly:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] += c
    return trim(out)


def neg(p: Poly) -> Poly:
    return tuple(-c for c in p)


def sub(p: Poly, q: Poly) -> Poly:
    return add(p, neg(q))


def mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def scale(p: Poly, c: Fraction) -> Poly:
    if c == 0:
        return ()
    return tuple(a * c for a in p)


def divmod_exact(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    """Polynomial division with remainder; q must be nonzero."""
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    lead = q[-1]
    dq = len(q) - 1
    quot = [Fraction(0)] * max(0, len(p) - dq)
    while len(rem) - 1 >= dq and any(rem):
        # strip trailing zeros introduced by cancellation
        while rem and rem[-1] == 0:
            rem.pop()
        if len(rem) - 1 < dq:
            break
        k = len(rem) - 1 - dq
        c = rem[-1] / lead
        quot[k] = c
        for i, b in enumerate(q):
            rem[k + i] -= c * b
        rem.pop()
    return trim(quot), trim(rem)


def poly_mod(p: Poly, q: Poly) -> Poly:
    return divmod_exact(p, q)[1]


def xgcd(p: Poly, q: Poly) -> tuple[Poly, Poly, Poly]:
    """Extended Euclid: returns (g, s, t) with s*p + t*q = g, g monic."""
    r0, r1 = p, q
    s0, s1 = make([1]), ()
    t0, t1 = (), make([1])
    while r1:
        quot, rem = divmod_exact(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, sub(s0, mul(quot, s1))
        t0, t1 = t1, sub(t0, mul(quot, t1))
    if r0:
        inv_lead = 1 / r0[-1]
        r0, s0, t0 = scale(r0, inv_lead), scale(s0, inv_lead), scale(t0, inv_lead)
    return r0, s0, t0


def evaluate(p: Poly, x):
    """Horner evaluation; x may be any ring element (Fraction, complex, mpmath)."""
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def derivative(p: Poly) -> Poly:
    return trim([c * i for i, c in enumerate(p)][1:])


def integer_scaled(p: Poly) -> tuple[int, ...]:
    """Clear denominators and divide out the integer content (primitive part)."""
    if not p:
        return ()
    den = 1
    for c in p:
        den = den * c.denominator // gcd(den, c.denominator)
    nums = [int(c * den) for c in p]
    g = 0
    for v in nums:
        g = gcd(g, v)
    return tuple(v // g for v in nums)


def rational_roots(p: Poly) -> list[Fraction]:
    """All rational roots, found by the classical p/q divisor screen."""
    nums = list(integer_scaled(p))
    if not nums:
        return []
    roots: list[Fraction] = []
    # factor out x^k so the constant term is nonzero
    k = 0
    while nums[0] == 0:
        nums.pop(0)
        k += 1
    if k:
        roots.append(Fraction(0))
    if len(nums) <= 1:
        return roots
    c0, lead = abs(nums[0]), abs(nums[-1])
    poly = trim([Fraction(v) for v in nums])
    for pn in _divisors(c0):
        for qd in _divisors(lead):
            for cand in (Fraction(pn, qd), Fraction(-pn, qd)):
                if cand not in roots and evaluate(poly, cand) == 0:
                    roots.append(cand)
    return roots


def _divisors(n: int) -> list[int]:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> Poly:
    """The n-th cyclotomic polynomial via x^n - 1 = prod_{d | n} Phi_d."""
    if n < 1:
        raise ValueError("n must be positive")
    p = make([-1] + [0] * (n - 1) + [1])
    for d in range(1, n):
        if n % d == 0:
            quot, rem = divmod_exact(p, cyclotomic(d))
            assert not rem
            p = quot
    return p
