"""Exact counting quantities: difference counts, additive energy,
product-of-differences statistics, dilated-difference collisions, incidences.

Everything here is integer-exact.  The central object is the count vector of
k-fold products of differences

    N(lambda) = #{(w_1,x_1,...,w_k,x_k) in (X_1^2 x ... x X_k^2) :
                  (w_1-x_1)...(w_k-x_k) = lambda mod p}

computed two ways: direct tuple enumeration (the oracle) and, for speed,
per-set difference counts pushed through the discrete log and combined by
exact cyclic convolution of length p-1.  Energies derived from N:

    full   sum_lambda N(lambda)^2                    (zero products included)
    star   sum_{lambda != 0} N(lambda)^2
    tilde  star - (prod_i |X_i|(|X_i|-1))^2 / (p-1)  (exact rational)

The cyclic convolution is schoolbook O(m^2), executed as int64 vector code
when a rigorous coefficient bound rules out overflow, with an exact big-int
(Kronecker substitution) fallback; a pure-Python schoolbook twin stays
available as the validation oracle.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .field import FieldContext
from .sets import ResidueSet

CONVOLUTION_PRIME_LIMIT = 100_000
BRUTE_TUPLE_LIMIT = 10**7
MAX_PAIRWISE_POINTS = 10_000

_INT64_SAFE = 1 << 62


@dataclass(frozen=True)
class CountVector:
    """counts[v] = multiplicity of residue v; total is the declared mass."""

    p: int
    counts: tuple[int, ...]
    total: int

    def __post_init__(self):
        if len(self.counts) != self.p:
            raise ValueError("count vector length must equal p")
        if any(c < 0 for c in self.counts):
            raise ValueError("negative count")
        if sum(self.counts) != self.total:
            raise ValueError("count mass does not match declared total")


@dataclass(frozen=True)
class ProductCounts:
    """Counts of k-fold difference products: nonzero[v] for v != 0, plus the
    number of tuples whose product is 0.  total = prod |X_i|^2."""

    p: int
    nonzero: tuple[int, ...]
    zero_count: int
    total: int

    def __post_init__(self):
        if len(self.nonzero) != self.p:
            raise ValueError("nonzero vector length must equal p")
        if self.nonzero[0] != 0:
            raise ValueError("slot 0 of the nonzero vector must stay 0")
        if any(c < 0 for c in self.nonzero) or self.zero_count < 0:
            raise ValueError("negative count")
        if self.zero_count + sum(self.nonzero) != self.total:
            raise ValueError("mass conservation violated: zero + nonzero != total")


# ---------------------------------------------------------------------------
# elementary counts
# ---------------------------------------------------------------------------

def difference_counts(ctx: FieldContext, a: ResidueSet) -> CountVector:
    """r(lambda) = #{(x, y) in A^2 : x - y = lambda mod p}."""
    arr = np.asarray(a.elements, dtype=np.int64)
    counts = np.zeros(ctx.p, dtype=np.int64)
    # row-chunked so huge sets do not materialize |A|^2 entries at once
    step = max(1, (2 << 20) // max(1, len(arr)))
    for i in range(0, len(arr), step):
        block = (arr[i:i + step, None] - arr[None, :]) % ctx.p
        counts += np.bincount(block.ravel(), minlength=ctx.p)
    return CountVector(p=ctx.p, counts=tuple(int(c) for c in counts),
                       total=len(a) ** 2)


def additive_energy(ctx: FieldContext, a: ResidueSet) -> int:
    """E+(A) = #{(a,b,c,d) in A^4 : a + b = c + d mod p}."""
    arr = np.asarray(a.elements, dtype=np.int64)
    counts = np.zeros(ctx.p, dtype=np.int64)
    step = max(1, (2 << 20) // max(1, len(arr)))
    for i in range(0, len(arr), step):
        block = (arr[i:i + step, None] + arr[None, :]) % ctx.p
        counts += np.bincount(block.ravel(), minlength=ctx.p)
    return sum(int(c) ** 2 for c in counts)


# ---------------------------------------------------------------------------
# exact cyclic convolution
# ---------------------------------------------------------------------------

def _linear_schoolbook(a: list[int], b: list[int]) -> list[int]:
    """Pure-Python O(nm) linear convolution; the reference implementation."""
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            if bj:
                out[i + j] += ai * bj
    return out


def _linear_numpy(a: list[int], b: list[int]) -> list[int]:
    """int64 schoolbook convolution; caller must have proved no overflow."""
    res = np.convolve(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
    return [int(x) for x in res]


def _linear_kronecker(a: list[int], b: list[int]) -> list[int]:
    """Exact convolution by packing coefficients into one big integer each.

    With stride wide enough to hold the largest product coefficient, the
    product of the packed integers carries the convolution in its base-2^(8s)
    digits; Python big-int multiplication does the rest.
    """
    bound = min(max(a) * sum(b), max(b) * sum(a)) if a and b else 0
    stride = bound.bit_length() // 8 + 1
    pa = int.from_bytes(b"".join(x.to_bytes(stride, "little") for x in a), "little")
    pb = int.from_bytes(b"".join(x.to_bytes(stride, "little") for x in b), "little")
    prod = pa * pb
    n_out = len(a) + len(b) - 1
    raw = prod.to_bytes(n_out * stride + stride, "little")
    return [int.from_bytes(raw[i * stride:(i + 1) * stride], "little")
            for i in range(n_out)]


def cyclic_convolve(a: list[int], b: list[int], method: str = "auto") -> list[int]:
    """Exact cyclic convolution of two equal-length nonnegative int vectors."""
    if len(a) != len(b):
        raise ValueError("cyclic convolution wants equal lengths")
    m = len(a)
    if m == 0:
        return []
    if method == "schoolbook":
        lin = _linear_schoolbook(a, b)
    elif method == "auto":
        bound = min(max(a) * sum(b), max(b) * sum(a))
        lin = _linear_numpy(a, b) if bound < _INT64_SAFE else _linear_kronecker(a, b)
    elif method == "kronecker":
        lin = _linear_kronecker(a, b)
    else:
        raise ValueError(f"unknown convolution method {method!r}")
    out = lin[:m] + [0] * (m - len(lin[:m]))
    for i, v in enumerate(lin[m:]):
        out[i] += v
    return out


# ---------------------------------------------------------------------------
# products of differences
# ---------------------------------------------------------------------------

def _product_counts_brute(ctx: FieldContext, sets: list[ResidueSet]) -> ProductCounts:
    p = ctx.p
    total = 1
    for s in sets:
        total *= len(s) ** 2
    if total > BRUTE_TUPLE_LIMIT:
        raise ValueError(f"brute force over {total} tuples exceeds cap {BRUTE_TUPLE_LIMIT}")
    pair_diffs = [[(w - x) % p for w in s for x in s] for s in sets]
    counts = [0] * p
    for combo in itertools.product(*pair_diffs):
        v = 1
        for d in combo:
            v = v * d % p
        counts[v] += 1
    zero = counts[0]
    counts[0] = 0
    return ProductCounts(p=p, nonzero=tuple(counts), zero_count=zero, total=total)


def _product_counts_convolution(ctx: FieldContext, sets: list[ResidueSet],
                                conv_method: str = "auto") -> ProductCounts:
    p = ctx.p
    if p > CONVOLUTION_PRIME_LIMIT:
        raise ValueError(f"convolution path capped at p <= {CONVOLUTION_PRIME_LIMIT}")
    m = p - 1
    acc = None
    for s in sets:
        d = difference_counts(ctx, s)
        c = [0] * m
        for x in range(1, p):
            if d.counts[x]:
                c[ctx.dlog[x]] = d.counts[x]
        acc = c if acc is None else cyclic_convolve(acc, c, method=conv_method)
    nonzero = [0] * p
    for a, cnt in enumerate(acc):
        if cnt:
            nonzero[ctx.gpow[a]] = cnt
    total = 1
    for s in sets:
        total *= len(s) ** 2
    zero = total - sum(acc)
    return ProductCounts(p=p, nonzero=tuple(nonzero), zero_count=zero, total=total)


def product_difference_counts(ctx: FieldContext, sets: list[ResidueSet],
                              method: str = "auto") -> ProductCounts:
    """Count vector of (w_1-x_1)...(w_k-x_k) over all 2k-tuples.

    method: "brute" enumerates tuples, "convolution" works in the discrete-log
    domain, "auto" prefers convolution where the prime cap allows it.
    """
    if len(sets) == 0:
        raise ValueError("need at least one set")
    if any(s.p != ctx.p for s in sets):
        raise ValueError("set modulus does not match context")
    if method == "brute":
        return _product_counts_brute(ctx, sets)
    if method == "convolution":
        return _product_counts_convolution(ctx, sets)
    if method == "auto":
        if ctx.p <= CONVOLUTION_PRIME_LIMIT:
            return _product_counts_convolution(ctx, sets)
        return _product_counts_brute(ctx, sets)
    raise ValueError(f"unknown method {method!r} (brute|convolution|auto)")


def difference_product_energy(ctx: FieldContext, sets: list[ResidueSet],
                              variant: str = "full",
                              method: str = "auto") -> int | Fraction:
    """Number of solutions of (w_1-x_1)...(w_k-x_k) = (y_1-z_1)...(y_k-z_k).

    variant "full" counts all solutions, "star" only those with nonzero
    products, "tilde" subtracts the mean-square main term
    (prod |X_i|(|X_i|-1))^2/(p-1) from star and is exact rational.
    For the one-set quantity pass k copies of the same set.
    """
    pc = product_difference_counts(ctx, sets, method=method)
    star = sum(c * c for c in pc.nonzero)
    if variant == "star":
        return star
    if variant == "full":
        return pc.zero_count ** 2 + star
    if variant == "tilde":
        mass = 1
        for s in sets:
            mass *= len(s) * (len(s) - 1)
        return Fraction(star) - Fraction(mass * mass, ctx.p - 1)
    raise ValueError(f"unknown variant {variant!r} (full|star|tilde)")


def character_energy_estimate(ctx: FieldContext, sets: list[ResidueSet],
                              nonprincipal_only: bool = False) -> float:
    """Independent route to star/tilde via multiplicative characters:

        (1/(p-1)) sum_chi prod_i |sum_{w,x in X_i} chi(w-x)|^2

    with chi(0) = 0.  Summing over all characters reproduces the star count;
    dropping the principal character reproduces tilde.  Evaluated with an FFT
    over the discrete-log domain, so the return value is a float.
    """
    p = ctx.p
    m = p - 1
    prods = np.ones(m, dtype=np.float64)
    for s in sets:
        d = difference_counts(ctx, s)
        c = np.zeros(m, dtype=np.float64)
        for x in range(1, p):
            if d.counts[x]:
                c[ctx.dlog[x]] = d.counts[x]
        prods *= np.abs(np.fft.fft(c)) ** 2
    if nonprincipal_only:
        return float(np.sum(prods[1:]) / m)
    return float(np.sum(prods) / m)


# ---------------------------------------------------------------------------
# dilated differences and incidences
# ---------------------------------------------------------------------------

def dilated_difference_energy(ctx: FieldContext, xs: ResidueSet, ys: ResidueSet,
                              zs: ResidueSet) -> int:
    """N(X,Y,Z) = #{x_1(y_1-z_1) = x_2(y_2-z_2)} over X^2 x Y^2 x Z^2.

    Computed as the second moment of the value multiset {x(y-z)}; requires
    0 not in X so the dilation stays within the stated family.
    """
    if not xs.zero_free:
        raise ValueError("dilating set X must avoid 0")
    p = ctx.p
    x = np.asarray(xs.elements, dtype=np.int64)
    y = np.asarray(ys.elements, dtype=np.int64)
    z = np.asarray(zs.elements, dtype=np.int64)
    diffs = (y[:, None] - z[None, :]) % p
    counts = np.zeros(p, dtype=np.int64)
    for xv in x:
        counts += np.bincount((xv * diffs).ravel() % p, minlength=p)
    return sum(int(c) ** 2 for c in counts)


@dataclass(frozen=True)
class IncidenceResult:
    incidences: int
    max_collinear: int
    max_collinear_exact: bool


def _canonical_plane(p: int, plane: tuple[int, int, int, int]) -> tuple[int, int, int, int]:
    a = tuple(c % p for c in plane[:3])
    b = plane[3] % p
    lead = next((i for i, c in enumerate(a) if c != 0), None)
    if lead is None:
        raise ValueError(f"degenerate plane {plane}: zero normal vector")
    inv = pow(a[lead], p - 2, p)
    return (a[0] * inv % p, a[1] * inv % p, a[2] * inv % p, b * inv % p)


def incidence_count(ctx: FieldContext, points: list[tuple[int, int, int]],
                    planes: list[tuple[int, int, int, int]],
                    max_pairwise_points: int = MAX_PAIRWISE_POINTS) -> IncidenceResult:
    """Point-plane incidences in F_p^3 plus the largest collinear batch.

    Planes are (a1,a2,a3,b) for a.x = b; they are canonicalized by scaling, and
    duplicates (points or planes) are rejected.  max_collinear hashes the line
    through every point pair, so it is computed exactly only up to the pairwise
    cap; beyond it the point count is returned as a flagged surrogate.
    """
    p = ctx.p
    pts = [tuple(c % p for c in q) for q in points]
    if len(set(pts)) != len(pts):
        raise ValueError("duplicate points")
    canon = [_canonical_plane(p, pl) for pl in planes]
    if len(set(canon)) != len(canon):
        raise ValueError("duplicate planes (after scaling to canonical form)")

    parr = np.asarray(pts, dtype=np.int64)
    inc = 0
    for a1, a2, a3, b in canon:
        vals = (parr[:, 0] * a1 + parr[:, 1] * a2 + parr[:, 2] * a3) % p
        inc += int(np.count_nonzero(vals == b))

    n = len(pts)
    if n <= 1:
        return IncidenceResult(incidences=inc, max_collinear=n, max_collinear_exact=True)
    if n > max_pairwise_points:
        return IncidenceResult(incidences=inc, max_collinear=n, max_collinear_exact=False)

    pair_tally: dict[tuple, int] = {}
    for i in range(n):
        xi = pts[i]
        for j in range(i + 1, n):
            d = tuple((pts[j][t] - xi[t]) % p for t in range(3))
            lead = next(t for t in range(3) if d[t] != 0)
            inv = pow(d[lead], p - 2, p)
            dn = tuple(c * inv % p for c in d)
            t0 = xi[lead]
            base = tuple((xi[t] - t0 * dn[t]) % p for t in range(3))
            key = (dn, base)
            pair_tally[key] = pair_tally.get(key, 0) + 1
    best_pairs = max(pair_tally.values())
    # m points on a line contribute C(m,2) pairs to its key
    m_best = (1 + math.isqrt(1 + 8 * best_pairs)) // 2
    return IncidenceResult(incidences=inc, max_collinear=m_best, max_collinear_exact=True)
