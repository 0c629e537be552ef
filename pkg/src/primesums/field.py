"""Arithmetic context for a prime field F_p.

A FieldContext fixes the smallest primitive root g of p and carries the full
discrete-log table, so that multiplicative structure (characters, subgroups,
products mapped to exponent space) is a table lookup everywhere else.
Characters come in two families:

    additive        e_p(j*x) = exp(2*pi*i*j*x / p)
    multiplicative  chi_j(g^a) = exp(2*pi*i*j*a / (p-1)),  chi_0 principal

Intended for desk-scale moduli: tables are built eagerly in O(p).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

TWO_PI = 2.0 * math.pi


def is_prime(n: int) -> bool:
    """Deterministic trial division, adequate for the moduli used here."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n by trial division."""
    factors = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            factors.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors.append(n)
    return factors


@dataclass(frozen=True)
class FieldContext:
    """Immutable tables for one prime field.

    dlog[x] is the exponent a with g^a = x (dlog[0] = -1, unused slot);
    gpow[a] is g^a for a in 0..p-2, the inverse permutation of dlog.
    """

    p: int
    g: int
    dlog: tuple[int, ...]
    gpow: tuple[int, ...]

    def e(self, u: int | float) -> complex:
        """Additive character e_p(u)."""
        return cmath.exp(1j * TWO_PI * (u % self.p) / self.p)

    def mult_char(self, j: int, x: int) -> complex:
        """chi_j(x) for x nonzero mod p."""
        return character_value(self, "multiplicative", j, x)


def build_context(p: int) -> FieldContext:
    """Validate p and build the primitive-root / discrete-log tables.

    The primitive root is the smallest one: g is tested against every prime
    q dividing p-1 via g^((p-1)/q) != 1.
    """
    if not isinstance(p, int):
        raise ValueError(f"modulus must be an integer, got {type(p).__name__}")
    if p < 3:
        raise ValueError(f"modulus {p} rejected: need an odd prime >= 3")
    if p % 2 == 0:
        raise ValueError(f"modulus {p} rejected: even")
    if not is_prime(p):
        raise ValueError(f"modulus {p} rejected: not prime")

    order = p - 1
    checks = [(q, order // q) for q in _prime_factors(order)]
    g = None
    for cand in range(2, p):
        if all(pow(cand, e, p) != 1 for _, e in checks):
            g = cand
            break
    if g is None:  # unreachable for prime p, kept as a guard
        raise ValueError(f"no primitive root found for {p}")

    gpow = [1] * order
    for a in range(1, order):
        gpow[a] = gpow[a - 1] * g % p
    dlog = [-1] * p
    for a, x in enumerate(gpow):
        dlog[x] = a
    return FieldContext(p=p, g=g, dlog=tuple(dlog), gpow=tuple(gpow))


def discrete_log(ctx: FieldContext, x: int) -> int:
    """Exponent a with g^a = x mod p; rejects x = 0 mod p."""
    r = x % ctx.p
    if r == 0:
        raise ValueError("discrete log of 0 is undefined")
    return ctx.dlog[r]


def character_value(ctx: FieldContext, kind: str, j: int, x: int) -> complex:
    """Evaluate the j-th additive or multiplicative character at x.

    Additive: e_p(j*x), defined for all x.  Multiplicative: chi_j(x) with
    j in [0, p-2], defined for x nonzero; chi_0 is principal.
    """
    if kind == "additive":
        return cmath.exp(1j * TWO_PI * ((j * x) % ctx.p) / ctx.p)
    if kind == "multiplicative":
        if not 0 <= j <= ctx.p - 2:
            raise ValueError(f"character index {j} outside [0, {ctx.p - 2}]")
        a = discrete_log(ctx, x)
        return cmath.exp(1j * TWO_PI * ((j * a) % (ctx.p - 1)) / (ctx.p - 1))
    raise ValueError(f"unknown character kind {kind!r} (additive|multiplicative)")
