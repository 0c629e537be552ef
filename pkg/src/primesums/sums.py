"""Exact evaluation of the exponential sums under study.

    multilinear   S = sum over X_1 x ... x X_n of w_1(x)...w_n(x) e_p(x_1...x_n)
                  where w_i has modulus <= 1 and ignores coordinate i
    mordell       T = sum over x in F_p^* of chi(x) e_p(Psi(x)), Psi sparse
    weyl over GAP S = sum over distinct GAP elements of e_p(F(a)), F dense
    fourier       Ahat(z) = sum over a in A of e_p(a z), z = 0..p-1

Multilinear sums are evaluated by full enumeration of tuples only; there is
deliberately no transform shortcut, because this value serves as the ground
truth that everything else is checked against.  Enumeration cost is guarded
by an explicit tuple budget.  Long weighted accumulations use compensated
(Kahan) summation.

Seeded random weights draw a unit-modulus phase per (slot, all-but-own
coordinates) from a keyed BLAKE2b hash, so they are reproducible across
platforms with no generator state involved.
"""

from __future__ import annotations

import cmath
import hashlib
import itertools
import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .field import FieldContext
from .sets import GapSpec, ResidueSet, SparsePoly, gap_elements

DEFAULT_TUPLE_BUDGET = 10**8
WEIGHT_MODULUS_TOLERANCE = 1e-9

_CHUNK = 1 << 22


class BudgetExceededError(ValueError):
    def __init__(self, required: int, budget: int):
        super().__init__(f"enumeration needs {required} tuples, budget is {budget}")
        self.required = required
        self.budget = budget


@dataclass(frozen=True)
class SumResult:
    value: complex
    modulus: float
    tuples_evaluated: int


@dataclass(frozen=True)
class WeightOracle:
    """n weight functions; the i-th maps a full coordinate tuple to a complex
    number of modulus <= 1 while ignoring coordinate i.  The modulus cap is
    enforced at evaluation time; the ignores-own-coordinate contract can be
    spot-checked with weight_ignores_own_coordinate."""

    arity: int
    evaluators: tuple

    def __post_init__(self):
        if len(self.evaluators) != self.arity:
            raise ValueError("need one evaluator per coordinate slot")


def unit_weights(n: int) -> WeightOracle:
    return WeightOracle(arity=n, evaluators=tuple((lambda coords: 1.0 + 0.0j)
                                                  for _ in range(n)))


def random_phase_weights(n: int, seed: int) -> WeightOracle:
    """Unit-modulus phases keyed by seed, slot index, and the coordinates
    other than the slot's own."""
    if seed < 0:
        raise ValueError("seed must be nonnegative")
    key = seed.to_bytes(8, "little")

    def make(i: int):
        def weight(coords) -> complex:
            h = hashlib.blake2b(digest_size=8, key=key + bytes([i]))
            for t, c in enumerate(coords):
                if t != i:
                    h.update(int(c).to_bytes(8, "little"))
            u = int.from_bytes(h.digest(), "little")
            return cmath.exp(2j * math.pi * (u / 2.0**64))
        return weight

    return WeightOracle(arity=n, evaluators=tuple(make(i) for i in range(n)))


def weight_ignores_own_coordinate(oracle: WeightOracle, ctx: FieldContext,
                                  sets: list[ResidueSet], trials: int = 20) -> bool:
    """Spot-check that each evaluator is constant in its own coordinate."""
    from .sets import SplitMix64
    rng = SplitMix64(0xC0FFEE)
    for _ in range(trials):
        coords = [s.elements[rng.below(len(s))] for s in sets]
        for i, f in enumerate(oracle.evaluators):
            base = f(tuple(coords))
            alt = list(coords)
            alt[i] = sets[i].elements[rng.below(len(sets[i]))]
            if abs(f(tuple(alt)) - base) > 1e-12:
                return False
    return True


class _KahanComplex:
    """Compensated complex accumulator."""

    __slots__ = ("re", "im", "cre", "cim")

    def __init__(self):
        self.re = self.im = self.cre = self.cim = 0.0

    def add(self, z: complex) -> None:
        y = z.real - self.cre
        t = self.re + y
        self.cre = (t - self.re) - y
        self.re = t
        y = z.imag - self.cim
        t = self.im + y
        self.cim = (t - self.im) - y
        self.im = t

    def value(self) -> complex:
        return complex(self.re, self.im)


@lru_cache(maxsize=16)
def _phase_table(p: int) -> np.ndarray:
    return np.exp(2j * np.pi * np.arange(p) / p)


def _unit_weight_value(ctx: FieldContext, sets: list[ResidueSet]) -> complex:
    """sum e_p(x_1...x_n) via chunked enumeration and a count-then-phase dot."""
    p = ctx.p
    counts = np.zeros(p, dtype=np.int64)
    arrays = [np.asarray(s.elements, dtype=np.int64) for s in sets]

    def merge(vals: np.ndarray, rest: list[np.ndarray]) -> None:
        if not rest:
            np.add(counts, np.bincount(vals, minlength=p), out=counts)
            return
        nxt = rest[0]
        if vals.size * nxt.size > _CHUNK:
            block = max(1, _CHUNK // nxt.size)
            for i in range(0, vals.size, block):
                merge((vals[i:i + block, None] * nxt[None, :] % p).ravel(), rest[1:])
        else:
            merge((vals[:, None] * nxt[None, :] % p).ravel(), rest[1:])

    merge(arrays[0], arrays[1:])
    return complex(np.dot(counts, _phase_table(p)))


def multilinear_sum(ctx: FieldContext, sets: list[ResidueSet],
                    weights: WeightOracle | str | tuple = "unit",
                    budget: int = DEFAULT_TUPLE_BUDGET) -> SumResult:
    """Full-enumeration multilinear sum with weights.

    weights: "unit", ("random", seed), or a WeightOracle.  All sets must be
    zero-free (the product e_p(x_1...x_n) degenerates on 0) and the tuple
    count prod |X_i| must fit the budget.
    """
    if len(sets) == 0:
        raise ValueError("need at least one set")
    if any(s.p != ctx.p for s in sets):
        raise ValueError("set modulus does not match context")
    for i, s in enumerate(sets):
        if not s.zero_free:
            raise ValueError(f"set {i + 1} contains 0; multilinear sums want zero-free sets")
    total = 1
    for s in sets:
        total *= len(s)
    if total > budget:
        raise BudgetExceededError(required=total, budget=budget)

    if weights == "unit":
        oracle = None
    elif isinstance(weights, tuple) and len(weights) == 2 and weights[0] == "random":
        oracle = random_phase_weights(len(sets), int(weights[1]))
    elif isinstance(weights, WeightOracle):
        if weights.arity != len(sets):
            raise ValueError(f"oracle arity {weights.arity} != {len(sets)} sets")
        oracle = weights
    else:
        raise ValueError(f"unrecognized weights {weights!r}")

    if oracle is None:
        value = _unit_weight_value(ctx, sets)
        return SumResult(value=value, modulus=abs(value), tuples_evaluated=total)

    p = ctx.p
    table = [cmath.exp(2j * math.pi * v / p) for v in range(p)]
    acc = _KahanComplex()
    cap = 1.0 + WEIGHT_MODULUS_TOLERANCE
    for coords in itertools.product(*(s.elements for s in sets)):
        w = 1.0 + 0.0j
        for f in oracle.evaluators:
            wi = f(coords)
            if abs(wi) > cap:
                raise ValueError(f"weight modulus {abs(wi)} exceeds 1 at {coords}")
            w *= wi
        prod = 1
        for c in coords:
            prod = prod * c % p
        acc.add(w * table[prod])
    value = acc.value()
    return SumResult(value=value, modulus=abs(value), tuples_evaluated=total)


def mordell_sum(ctx: FieldContext, poly: SparsePoly, chi_index: int = 0) -> SumResult:
    """sum over x in F_p^* of chi_j(x) e_p(Psi(x)) for a sparse Psi."""
    p = ctx.p
    m = p - 1
    if not 0 <= chi_index <= m - 1:
        raise ValueError(f"character index {chi_index} outside [0, {m - 1}]")
    for a, _k in poly.terms:
        if a % p == 0:
            raise ValueError("polynomial coefficient vanishes mod p")
    add_table = [cmath.exp(2j * math.pi * v / p) for v in range(p)]
    chi_table = [cmath.exp(2j * math.pi * (chi_index * a % m) / m) for a in range(m)]
    acc = _KahanComplex()
    for x in range(1, p):
        acc.add(chi_table[ctx.dlog[x]] * add_table[poly(x, p)])
    value = acc.value()
    return SumResult(value=value, modulus=abs(value), tuples_evaluated=m)


def weyl_gap_sum(ctx: FieldContext, gap: GapSpec, coeffs: list[int]) -> SumResult:
    """sum over distinct GAP elements of e_p(F(a)), F dense with coeffs
    (b_0, b_1, ..., b_d) from the constant term up.  Improper GAPs are
    summed over their distinct elements, with a warning."""
    if len(coeffs) == 0:
        raise ValueError("need polynomial coefficients")
    elems, proper = gap_elements(ctx, gap)
    if not proper:
        warnings.warn("GAP is not proper; summing over distinct elements only",
                      stacklevel=2)
    p = ctx.p
    acc = _KahanComplex()
    for a in elems:
        v = 0
        for c in reversed(coeffs):
            v = (v * a + c) % p
        acc.add(cmath.exp(2j * math.pi * v / p))
    value = acc.value()
    return SumResult(value=value, modulus=abs(value), tuples_evaluated=len(elems))


def fourier_l1(ctx: FieldContext, a: ResidueSet) -> tuple[float, float]:
    """(l^1, l^2-squared) of the indicator transform Ahat over all z mod p.

    Parseval pins the second value to p*|A| and is used as a self-check."""
    ind = np.zeros(ctx.p, dtype=np.float64)
    ind[list(a.elements)] = 1.0
    moduli = np.abs(np.fft.fft(ind))
    return float(moduli.sum()), float((moduli ** 2).sum())
