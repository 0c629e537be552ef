"""Residue-set families over F_p and the descriptor mini-language.

Families: intervals, multiplicative subgroups, seeded random sets, generalized
arithmetic progressions (GAPs), and explicit lists.  On top of those: power
images x -> x^k of multiplicatively closed sets, d-fold sumsets, and the gcd
parameters attached to a list of power exponents.

Descriptor syntax (one string per set, used by the CLI and sweep configs):

    interval:a..b
    subgroup:d
    random:size,seed[,zerofree]
    gap:beta;a1,a2,...;H1,H2,...
    explicit:x1,x2,...

Random sets are a seeded Fisher-Yates shuffle of [0,p) (or [1,p) when
zero-free) with the prefix taken.  The shuffle runs on SplitMix64 so results
are identical across platforms and Python versions; the generator constants
are spelled out below.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .field import FieldContext

GAP_ENUMERATION_LIMIT = 10**7

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """Portable 64-bit generator: state += 0x9E3779B97F4A7C15, output mixed
    with the standard two xor-shift-multiply rounds (0xBF58476D1CE4E5B9,
    0x94D049BB133111EB).  Bounded draws use rejection sampling, so the
    stream of draws for a given seed is implementation independent."""

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform draw from [0, n) without modulo bias."""
        if n <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            r = self.next64()
            if r < limit:
                return r % n

    def shuffle(self, items: list) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]


@dataclass(frozen=True)
class ResidueSet:
    """A set of residues mod p: sorted, distinct, with a provenance tag."""

    p: int
    elements: tuple[int, ...]
    provenance: str = "explicit"

    def __post_init__(self):
        if len(self.elements) == 0:
            raise ValueError("empty residue set rejected")
        if list(self.elements) != sorted(set(self.elements)):
            raise ValueError("elements must be sorted and distinct")
        if self.elements[0] < 0 or self.elements[-1] >= self.p:
            raise ValueError(f"elements outside [0, {self.p})")

    @property
    def zero_free(self) -> bool:
        return self.elements[0] != 0

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        return x in set(self.elements)


def residue_set(p: int, elements, provenance: str = "explicit") -> ResidueSet:
    """Normalize an iterable of residues into a ResidueSet."""
    return ResidueSet(p=p, elements=tuple(sorted(set(int(x) % p for x in elements))),
                      provenance=provenance)


@dataclass(frozen=True)
class GapSpec:
    """Generalized arithmetic progression {beta + a1*h1 + ... + ar*hr : 1 <= hi <= Hi}."""

    beta: int
    alphas: tuple[int, ...]
    lengths: tuple[int, ...]

    def __post_init__(self):
        if len(self.alphas) != len(self.lengths):
            raise ValueError("alphas and lengths must have equal rank")
        if len(self.alphas) == 0:
            raise ValueError("GAP rank must be >= 1")
        if any(h < 1 for h in self.lengths):
            raise ValueError("GAP side lengths must be >= 1")

    @property
    def rank(self) -> int:
        return len(self.alphas)

    @property
    def volume(self) -> int:
        v = 1
        for h in self.lengths:
            v *= h
        return v


@dataclass(frozen=True)
class SparsePoly:
    """Sparse polynomial sum(a_i * x^k_i) given as ((a1, k1), (a2, k2), ...)."""

    terms: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if len(self.terms) == 0:
            raise ValueError("polynomial needs at least one term")
        ks = [k for _, k in self.terms]
        if any(k < 1 for k in ks):
            raise ValueError("exponents must be >= 1")
        if len(set(ks)) != len(ks):
            raise ValueError("exponents must be distinct")

    @property
    def sparsity(self) -> int:
        return len(self.terms)

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(k for _, k in self.terms)

    def __call__(self, x: int, p: int) -> int:
        return sum(a * pow(x, k, p) for a, k in self.terms) % p


# ---------------------------------------------------------------------------
# descriptors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntervalDescriptor:
    lo: int
    hi: int


@dataclass(frozen=True)
class SubgroupDescriptor:
    order: int


@dataclass(frozen=True)
class RandomDescriptor:
    size: int
    seed: int
    zero_free: bool = False


@dataclass(frozen=True)
class GapDescriptor:
    gap: GapSpec


@dataclass(frozen=True)
class ExplicitDescriptor:
    elements: tuple[int, ...]


Descriptor = (IntervalDescriptor | SubgroupDescriptor | RandomDescriptor
              | GapDescriptor | ExplicitDescriptor)


def parse_descriptor(text: str) -> Descriptor:
    """Parse one set descriptor string; raises ValueError naming the defect."""
    head, sep, body = text.strip().partition(":")
    if not sep:
        raise ValueError(f"descriptor {text!r} lacks a 'family:' prefix")
    try:
        if head == "interval":
            lo_s, sep2, hi_s = body.partition("..")
            if not sep2:
                raise ValueError("interval wants a..b")
            return IntervalDescriptor(lo=int(lo_s), hi=int(hi_s))
        if head == "subgroup":
            return SubgroupDescriptor(order=int(body))
        if head == "random":
            parts = [s.strip() for s in body.split(",")]
            if len(parts) == 2:
                return RandomDescriptor(size=int(parts[0]), seed=int(parts[1]))
            if len(parts) == 3 and parts[2] == "zerofree":
                return RandomDescriptor(size=int(parts[0]), seed=int(parts[1]),
                                        zero_free=True)
            raise ValueError("random wants size,seed[,zerofree]")
        if head == "gap":
            chunks = body.split(";")
            if len(chunks) != 3:
                raise ValueError("gap wants beta;a1,...;H1,...")
            beta = int(chunks[0])
            alphas = tuple(int(s) for s in chunks[1].split(","))
            lengths = tuple(int(s) for s in chunks[2].split(","))
            return GapDescriptor(gap=GapSpec(beta=beta, alphas=alphas, lengths=lengths))
        if head == "explicit":
            return ExplicitDescriptor(elements=tuple(int(s) for s in body.split(",")))
    except ValueError as exc:
        raise ValueError(f"bad descriptor {text!r}: {exc}") from None
    raise ValueError(f"unknown set family {head!r} in descriptor {text!r}")


def descriptor_str(desc: Descriptor) -> str:
    """Canonical descriptor text (inverse of parse_descriptor)."""
    if isinstance(desc, IntervalDescriptor):
        return f"interval:{desc.lo}..{desc.hi}"
    if isinstance(desc, SubgroupDescriptor):
        return f"subgroup:{desc.order}"
    if isinstance(desc, RandomDescriptor):
        tail = ",zerofree" if desc.zero_free else ""
        return f"random:{desc.size},{desc.seed}{tail}"
    if isinstance(desc, GapDescriptor):
        g = desc.gap
        return (f"gap:{g.beta};{','.join(map(str, g.alphas))};"
                f"{','.join(map(str, g.lengths))}")
    if isinstance(desc, ExplicitDescriptor):
        return f"explicit:{','.join(map(str, desc.elements))}"
    raise ValueError(f"not a descriptor: {desc!r}")


def build_set(ctx: FieldContext, desc: Descriptor | str) -> ResidueSet:
    """Materialize a descriptor as a ResidueSet in F_p."""
    if isinstance(desc, str):
        desc = parse_descriptor(desc)
    p = ctx.p

    if isinstance(desc, IntervalDescriptor):
        if not 0 <= desc.lo <= desc.hi < p:
            raise ValueError(f"interval {desc.lo}..{desc.hi} outside [0, {p})")
        return ResidueSet(p=p, elements=tuple(range(desc.lo, desc.hi + 1)),
                          provenance="interval")

    if isinstance(desc, SubgroupDescriptor):
        d = desc.order
        if d < 1 or (p - 1) % d != 0:
            raise ValueError(f"subgroup order {d} does not divide {p - 1}")
        step = (p - 1) // d
        elems = sorted(ctx.gpow[j * step] for j in range(d))
        return ResidueSet(p=p, elements=tuple(elems), provenance=f"subgroup:{d}")

    if isinstance(desc, RandomDescriptor):
        pool = list(range(1, p)) if desc.zero_free else list(range(p))
        if not 1 <= desc.size <= len(pool):
            raise ValueError(f"random size {desc.size} outside [1, {len(pool)}]")
        SplitMix64(desc.seed).shuffle(pool)
        return ResidueSet(p=p, elements=tuple(sorted(pool[:desc.size])),
                          provenance=f"random:{desc.seed}")

    if isinstance(desc, GapDescriptor):
        s, _proper = gap_elements(ctx, desc.gap)
        return s

    if isinstance(desc, ExplicitDescriptor):
        if len(set(desc.elements)) != len(desc.elements):
            raise ValueError("explicit set has duplicate elements")
        if any(not 0 <= x < p for x in desc.elements):
            raise ValueError(f"explicit elements outside [0, {p})")
        return ResidueSet(p=p, elements=tuple(sorted(desc.elements)),
                          provenance="explicit")

    raise ValueError(f"not a descriptor: {desc!r}")


# ---------------------------------------------------------------------------
# GAPs
# ---------------------------------------------------------------------------

def gap_elements(ctx: FieldContext, gap: GapSpec) -> tuple[ResidueSet, bool]:
    """Enumerate a GAP's distinct elements mod p; second value is properness.

    Proper means no collisions: the number of distinct residues equals the
    product of side lengths.  Volume is capped (cost guard), and must not
    exceed p since a proper GAP cannot outgrow the field.
    """
    vol = gap.volume
    if vol > GAP_ENUMERATION_LIMIT:
        raise ValueError(f"GAP volume {vol} exceeds enumeration cap {GAP_ENUMERATION_LIMIT}")
    if vol > ctx.p:
        raise ValueError(f"GAP volume {vol} exceeds field size {ctx.p}")
    p = ctx.p
    seen = set()
    for hs in itertools.product(*(range(1, h + 1) for h in gap.lengths)):
        v = gap.beta
        for a, h in zip(gap.alphas, hs):
            v += a * h
        seen.add(v % p)
    proper = len(seen) == vol
    s = ResidueSet(p=p, elements=tuple(sorted(seen)),
                   provenance=f"gap:r{gap.rank}")
    return s, proper


def random_proper_gap(ctx: FieldContext, lengths: tuple[int, ...], seed: int,
                      max_attempts: int = 100) -> tuple[GapSpec, ResidueSet]:
    """Seeded proper GAP with the given side lengths.

    Draws beta from [0,p) and each alpha from [1,p) with SplitMix64(seed);
    redraws (same stream) until the GAP is proper.  With volume well below p
    the first draw almost always lands proper.
    """
    rng = SplitMix64(seed)
    for _ in range(max_attempts):
        beta = rng.below(ctx.p)
        alphas = tuple(1 + rng.below(ctx.p - 1) for _ in lengths)
        gap = GapSpec(beta=beta, alphas=alphas, lengths=tuple(lengths))
        s, proper = gap_elements(ctx, gap)
        if proper:
            return gap, s
    raise ValueError(f"no proper GAP found in {max_attempts} attempts (seed {seed})")


# ---------------------------------------------------------------------------
# power images, sumsets, gcd parameters
# ---------------------------------------------------------------------------

def _is_multiplicatively_closed(ctx: FieldContext, s: ResidueSet) -> bool:
    if not s.zero_free:
        return False
    if len(s) == ctx.p - 1:
        return True
    elems = set(s.elements)
    return all(a * b % ctx.p in elems for a in elems for b in elems)


def power_image_fibers(ctx: FieldContext, s: ResidueSet, k: int) -> dict[int, int]:
    """Diagnostic for arbitrary sets: image element -> fiber size under x -> x^k."""
    fibers: dict[int, int] = {}
    for x in s:
        y = pow(x, k, ctx.p)
        fibers[y] = fibers.get(y, 0) + 1
    return fibers


def power_image(ctx: FieldContext, s: ResidueSet, k: int) -> tuple[ResidueSet, int]:
    """Image of a multiplicatively closed set under x -> x^k, with multiplicity.

    On a subgroup (or all of F_p^*) every fiber has the same size; that size
    is returned as the multiplicity.  Non-closed input is rejected; use
    power_image_fibers for the diagnostic view.
    """
    if k < 1:
        raise ValueError("power exponent must be >= 1")
    if not _is_multiplicatively_closed(ctx, s):
        raise ValueError("power_image needs a multiplicatively closed set "
                         "(subgroup or F_p^*); see power_image_fibers for others")
    fibers = power_image_fibers(ctx, s, k)
    sizes = set(fibers.values())
    if len(sizes) != 1:  # cannot happen on a subgroup; kept as a guard
        raise ValueError(f"non-constant fiber sizes {sorted(sizes)}")
    mult = sizes.pop()
    image = ResidueSet(p=ctx.p, elements=tuple(sorted(fibers)),
                       provenance=f"{s.provenance}^^{k}")
    if mult * len(image) != len(s):
        raise ValueError("fiber accounting failed")  # internal consistency
    return image, mult


def d_fold_sumset(ctx: FieldContext, s: ResidueSet, d: int) -> ResidueSet:
    """{s1 + ... + sd mod p}; grows one fold at a time, capped at p elements."""
    if d < 1:
        raise ValueError("fold count must be >= 1")
    p = ctx.p
    acc = set(s.elements)
    for _ in range(d - 1):
        if len(acc) == p:
            break
        acc = {(a + b) % p for a in acc for b in s.elements}
    return ResidueSet(p=p, elements=tuple(sorted(acc)),
                      provenance=f"{s.provenance}+fold{d}")


def gcd_parameters(p: int, exponents: list[int] | tuple[int, ...]) -> tuple[list[int], list[int]]:
    """Per-exponent parameters alpha_i = gcd(k_i, p-1) and, for i < t,
    beta_i = alpha_i / gcd(alpha_i, alpha_t), where k_t is the last exponent."""
    if len(exponents) == 0:
        raise ValueError("need at least one exponent")
    alphas = [math.gcd(int(k), p - 1) for k in exponents]
    a_last = alphas[-1]
    betas = [a // math.gcd(a, a_last) for a in alphas[:-1]]
    return alphas, betas
