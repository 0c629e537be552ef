"""Experiment harness: sweep configs, report rows, verification suites.

A sweep walks (prime x set-tuple x bound) combinations for one quantity and
writes one CSV row per combination.  Columns, in fixed order:

    p, quantity, descriptors, exact_value, main_term, bound_id, bound_value,
    case_label, ratio, hypotheses_ok, seed, runtime_ms

Exact integers are rendered in full decimal, exact rationals as "num/den",
floats in shortest round-trip form; a rerun with the same config is
byte-identical except for runtime_ms.  For bounds that control the error
|exact - main| the ratio column is |exact - main|/bound (undefined when the
set is too small for its log factors, i.e. A < 2); otherwise it is
exact/bound.

Config files are flat key-value text: `key = value` per line, `#` comments.
Set tuples live in one `sets` entry, tuples separated by `;`, members by `|`.

Verification suites re-derive key identities and inequalities on seeded
instance lists and report counterexamples; suite failure is the only thing
that makes the CLI exit nonzero.
"""

from __future__ import annotations

import concurrent.futures
import csv
import io
import json
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import bounds as bounds_mod
from . import counting, sums
from .field import FieldContext, build_context, is_prime
from .sets import (ResidueSet, SparsePoly, SplitMix64, GapDescriptor,
                   build_set, parse_descriptor)

CSV_COLUMNS = ("p", "quantity", "descriptors", "exact_value", "main_term",
               "bound_id", "bound_value", "case_label", "ratio",
               "hypotheses_ok", "seed", "runtime_ms")

QUANTITIES = ("multilinear-sum", "mordell", "weyl-gap", "fourier-l1", "dk",
              "energy", "n-count", "incidences")

COMPATIBLE_BOUNDS = {
    "multilinear-sum": {"vinogradov", "thm-1.1", "thm-1.2", "lemma-2.5",
                        "lemma-2.6", "lemma-3.4"},
    "mordell": {"weil", "thm-1.3"},
    "weyl-gap": set(),
    "fourier-l1": {"gap-l1"},
    "dk": {f"dk:{r}" for r in bounds_mod.DK_REGIMES},
    "energy": set(),
    "n-count": {"n-count", "n-count:subgroup"},
    "incidences": {"rudnev"},
}


@dataclass(frozen=True)
class ExperimentConfig:
    quantity: str
    primes: tuple[int, ...]
    set_tuples: tuple[tuple[str, ...], ...] = ()
    bound_ids: tuple[str, ...] = ()
    k: int | None = None
    variant: str = "full"
    method: str = "auto"
    weights: str = "unit"
    seed: int = 0
    budget: int = sums.DEFAULT_TUPLE_BUDGET
    poly: str | None = None
    chi: int = 0
    coeffs: tuple[int, ...] = ()
    num_points: int = 0
    num_planes: int = 0
    workers: int = 1
    output: str | None = None

    def validate(self) -> None:
        if self.quantity not in QUANTITIES:
            raise ValueError(f"unknown quantity {self.quantity!r}; "
                             f"choose from {', '.join(QUANTITIES)}")
        for p in self.primes:
            if not is_prime(p) or p < 3:
                raise ValueError(f"prime list entry {p} is not an odd prime")
        allowed = COMPATIBLE_BOUNDS[self.quantity]
        for b in self.bound_ids:
            if b not in bounds_mod.BOUND_IDS:
                raise ValueError(f"unknown bound id {b!r}; "
                                 f"registry: {', '.join(bounds_mod.BOUND_IDS)}")
            if b not in allowed:
                raise ValueError(f"bound {b!r} is not applicable to quantity "
                                 f"{self.quantity!r} (allowed: {sorted(allowed) or 'none'})")
        for tup in self.set_tuples:
            for d in tup:
                parse_descriptor(d)
        if self.quantity == "multilinear-sum":
            if not self.set_tuples:
                raise ValueError("multilinear-sum needs set tuples")
            if "vinogradov" in self.bound_ids and any(len(t) != 2 for t in self.set_tuples):
                raise ValueError("vinogradov applies to 2-set tuples only")
            if "thm-1.1" in self.bound_ids and any(len(t) < 4 for t in self.set_tuples):
                raise ValueError("thm-1.1 applies to tuples of 4 or more sets")
        if self.quantity == "mordell" and not self.poly:
            raise ValueError("mordell needs poly = a1:k1,a2:k2,...")
        if self.quantity == "weyl-gap":
            if not self.coeffs:
                raise ValueError("weyl-gap needs coeffs = b0,b1,...")
            for tup in self.set_tuples:
                if len(tup) != 1 or not isinstance(parse_descriptor(tup[0]), GapDescriptor):
                    raise ValueError("weyl-gap wants one gap:... descriptor per tuple")
        if self.quantity == "fourier-l1":
            if "gap-l1" in self.bound_ids:
                for tup in self.set_tuples:
                    if len(tup) != 1 or not isinstance(parse_descriptor(tup[0]), GapDescriptor):
                        raise ValueError("gap-l1 wants one gap:... descriptor per tuple")
        if self.quantity == "dk":
            if self.k is None or self.k < 1:
                raise ValueError("dk needs k >= 1")
            if self.variant not in ("full", "star", "tilde"):
                raise ValueError("variant must be full|star|tilde")
            for tup in self.set_tuples:
                if len(tup) not in (1, self.k):
                    raise ValueError("dk tuples need 1 or k descriptors")
                if self.bound_ids and len(set(tup)) != 1:
                    raise ValueError("dk bounds are single-set statements; "
                                     "descriptors in a tuple must agree")
        if self.quantity == "n-count":
            for tup in self.set_tuples:
                if len(tup) != 3:
                    raise ValueError("n-count tuples need exactly 3 descriptors")
        if self.quantity == "incidences":
            if self.num_points < 1 or self.num_planes < 1:
                raise ValueError("incidences needs num_points and num_planes >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


def parse_poly(text: str) -> SparsePoly:
    """Sparse polynomial literal a1:k1,a2:k2,... -> SparsePoly."""
    terms = []
    for chunk in text.split(","):
        a_s, sep, k_s = chunk.partition(":")
        if not sep:
            raise ValueError(f"bad sparse-poly term {chunk!r}; want coeff:exponent")
        terms.append((int(a_s), int(k_s)))
    return SparsePoly(terms=tuple(terms))


_CONFIG_KEYS = {"quantity", "primes", "sets", "bounds", "k", "variant", "method",
                "weights", "seed", "budget", "poly", "chi", "coeffs",
                "num_points", "num_planes", "workers", "output"}


def parse_config(text: str) -> ExperimentConfig:
    """Parse the flat key-value sweep config format."""
    raw: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        key, sep, value = stripped.partition("=")
        if not sep:
            raise ValueError(f"config line {lineno}: expected key = value")
        key = key.strip()
        if key not in _CONFIG_KEYS:
            raise ValueError(f"config line {lineno}: unknown key {key!r}")
        if key in raw:
            raise ValueError(f"config line {lineno}: duplicate key {key!r}")
        raw[key] = value.strip()

    if "quantity" not in raw or "primes" not in raw:
        raise ValueError("config needs at least quantity and primes")

    def ints(s):
        return tuple(int(x) for x in s.split(",") if x.strip())

    set_tuples = ()
    if raw.get("sets"):
        set_tuples = tuple(
            tuple(m.strip() for m in chunk.split("|") if m.strip())
            for chunk in raw["sets"].split(";") if chunk.strip())

    cfg = ExperimentConfig(
        quantity=raw["quantity"],
        primes=ints(raw["primes"]),
        set_tuples=set_tuples,
        bound_ids=tuple(b.strip() for b in raw.get("bounds", "").split(",") if b.strip()),
        k=int(raw["k"]) if "k" in raw else None,
        variant=raw.get("variant", "full"),
        method=raw.get("method", "auto"),
        weights=raw.get("weights", "unit"),
        seed=int(raw.get("seed", "0")),
        budget=int(raw.get("budget", str(sums.DEFAULT_TUPLE_BUDGET))),
        poly=raw.get("poly"),
        chi=int(raw.get("chi", "0")),
        coeffs=ints(raw["coeffs"]) if "coeffs" in raw else (),
        num_points=int(raw.get("num_points", "0")),
        num_planes=int(raw.get("num_planes", "0")),
        workers=int(raw.get("workers", "1")),
        output=raw.get("output"),
    )
    cfg.validate()
    return cfg


def load_config(path: str | Path) -> ExperimentConfig:
    return parse_config(Path(path).read_text(encoding="utf-8"))


# ---------------------------------------------------------------------------
# report rows
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ReportRow:
    p: int
    quantity: str
    descriptors: str
    exact_value: object
    main_term: object
    bound_id: str
    bound_value: object
    case_label: str
    ratio: object
    hypotheses_ok: str
    seed: int
    runtime_ms: int


def _render(v) -> str:
    if v is None:
        return ""
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}" if v.denominator != 1 else str(v.numerator)
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return repr(v)
    return str(v)


def rows_to_csv(rows: list[ReportRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(CSV_COLUMNS)
    for r in rows:
        writer.writerow([_render(getattr(r, c)) for c in CSV_COLUMNS])
    return buf.getvalue()


def rows_to_json(rows: list[ReportRow]) -> str:
    payload = []
    for r in rows:
        payload.append({c: _render(getattr(r, c)) for c in CSV_COLUMNS})
    return json.dumps(payload, indent=2) + "\n"


# ---------------------------------------------------------------------------
# quantity evaluation
# ---------------------------------------------------------------------------

@dataclass
class _Outcome:
    descriptors: str
    exact: object = None          # int | float | Fraction | None
    main: object = None
    sizes: tuple = ()
    extra: dict = field(default_factory=dict)
    skip_reason: str | None = None


def _instance_rng(seed: int, p: int) -> SplitMix64:
    # one independent stream per (seed, prime); constants documented in sets
    return SplitMix64(((seed + 1) << 24) ^ p)


def _random_point_plane_instance(ctx: FieldContext, num_points: int, num_planes: int,
                                 seed: int):
    p = ctx.p
    if num_points > p ** 3:
        raise ValueError("more points requested than the space holds")
    rng = _instance_rng(seed, p)
    points: set[tuple[int, int, int]] = set()
    while len(points) < num_points:
        points.add((rng.below(p), rng.below(p), rng.below(p)))
    planes: set[tuple[int, int, int, int]] = set()
    while len(planes) < num_planes:
        a = (rng.below(p), rng.below(p), rng.below(p))
        if a == (0, 0, 0):
            continue
        planes.add(counting._canonical_plane(p, (*a, rng.below(p))))
    return sorted(points), sorted(planes)


def _compute_outcome(ctx: FieldContext, cfg: ExperimentConfig,
                     desc_tuple: tuple[str, ...]) -> _Outcome:
    q = cfg.quantity
    out = _Outcome(descriptors="|".join(desc_tuple))

    if q == "incidences":
        out.descriptors = f"random-points:{cfg.num_points},{cfg.num_planes}"
        points, planes = _random_point_plane_instance(ctx, cfg.num_points,
                                                      cfg.num_planes, cfg.seed)
        res = counting.incidence_count(ctx, points, planes)
        out.exact = res.incidences
        out.extra["incidence"] = res
        return out

    if q == "mordell":
        poly = parse_poly(cfg.poly)
        out.descriptors = f"poly:{cfg.poly};chi:{cfg.chi}"
        res = sums.mordell_sum(ctx, poly, chi_index=cfg.chi)
        out.exact = res.modulus
        out.extra["poly"] = poly
        return out

    sets_built = [build_set(ctx, d) for d in desc_tuple]
    out.sizes = tuple(len(s) for s in sets_built)
    out.extra["sets"] = sets_built

    if q == "multilinear-sum":
        weights = ("random", cfg.seed) if cfg.weights == "random" else "unit"
        try:
            res = sums.multilinear_sum(ctx, sets_built, weights=weights,
                                       budget=cfg.budget)
        except sums.BudgetExceededError as exc:
            out.skip_reason = f"skipped:budget({exc.required}>{exc.budget})"
            return out
        out.exact = res.modulus
        return out

    if q == "weyl-gap":
        desc = parse_descriptor(desc_tuple[0])
        res = sums.weyl_gap_sum(ctx, desc.gap, list(cfg.coeffs))
        out.exact = res.modulus
        return out

    if q == "fourier-l1":
        l1, l2_sq = sums.fourier_l1(ctx, sets_built[0])
        out.exact = l1
        out.extra["l2_sq"] = l2_sq
        desc = parse_descriptor(desc_tuple[0])
        if isinstance(desc, GapDescriptor):
            out.extra["rank"] = desc.gap.rank
        return out

    if q == "energy":
        out.exact = counting.additive_energy(ctx, sets_built[0])
        return out

    if q == "dk":
        k = cfg.k
        family = sets_built if len(sets_built) == k else [sets_built[0]] * k
        out.exact = counting.difference_product_energy(ctx, family, variant=cfg.variant,
                                                       method=cfg.method)
        if cfg.variant == "full" and len({len(s) for s in family}) == 1:
            out.main = Fraction(len(family[0]) ** (4 * k), ctx.p)
        out.extra["family"] = family
        return out

    if q == "n-count":
        out.exact = counting.dilated_difference_energy(ctx, *sets_built)
        return out

    raise ValueError(f"unhandled quantity {q!r}")  # unreachable after validate()


def _bound_for_outcome(ctx: FieldContext, cfg: ExperimentConfig, out: _Outcome,
                       bound_id: str) -> bounds_mod.BoundResult:
    q = cfg.quantity
    p = ctx.p
    if q == "multilinear-sum":
        sizes = sorted(out.sizes, reverse=True)
        if bound_id == "vinogradov":
            return bounds_mod.vinogradov_bound(p, out.sizes[0], out.sizes[1])
        if bound_id == "thm-1.1":
            return bounds_mod.multilinear_bound(p, sizes)
        if bound_id == "thm-1.2":
            return bounds_mod.multilinear_bound_large_sets(p, sizes)
        n = len(out.sizes)
        sets_built = out.extra["sets"]
        if bound_id == "lemma-3.4":
            return bounds_mod.subgroup_multilinear_bound(p, sizes)
        if bound_id == "lemma-2.5":
            # inner term = (prod over the first n-1 sets of D*_{n-1}(X_i))^(1/(n-1))
            inner = 1.0
            for s in sets_built[:-1]:
                star = counting.difference_product_energy(ctx, [s] * (n - 1), "star",
                                                          method=cfg.method)
                inner *= float(star) ** (1.0 / (n - 1))
            return bounds_mod.reduction_rhs(p, out.sizes, inner, "product-energy")
        if bound_id == "lemma-2.6":
            prod = 1.0
            for s in sets_built:
                tilde = counting.difference_product_energy(ctx, [s] * n, "tilde",
                                                           method=cfg.method)
                prod *= float(tilde)
            inner = prod ** (1.0 / (2 * n)) if prod > 0 else 0.0
            return bounds_mod.reduction_rhs(p, out.sizes, inner, "centered-energy")
    if q == "mordell":
        poly = out.extra["poly"]
        if bound_id == "weil":
            return bounds_mod.weil_bound(p, poly)
        if bound_id == "thm-1.3":
            return bounds_mod.multinomial_bound(p, poly.exponents)
    if q == "fourier-l1" and bound_id == "gap-l1":
        return bounds_mod.gap_l1_envelope(p, out.extra["rank"])
    if q == "dk":
        a = out.sizes[0]
        kwargs = {}
        if bound_id in ("dk:shkredov-energy", "dk:large-set"):
            kwargs["energy"] = float(counting.additive_energy(ctx, out.extra["family"][0]))
        if bound_id == "dk:recursion":
            prev = counting.difference_product_energy(
                ctx, out.extra["family"][:cfg.k - 1] or out.extra["family"][:1],
                "full", method=cfg.method) if cfg.k > 1 else 1
            kwargs["prev_dk"] = float(prev)
        return bounds_mod.difference_product_energy_bound(p, a, cfg.k,
                                                          bound_id[3:], **kwargs)
    if q == "n-count":
        return bounds_mod.dilated_difference_energy_bound(
            p, *out.sizes, subgroup_mode=bound_id.endswith("subgroup"))
    if q == "incidences" and bound_id == "rudnev":
        res = out.extra["incidence"]
        return bounds_mod.rudnev_bound(p, cfg.num_points, cfg.num_planes,
                                       res.max_collinear)
    raise ValueError(f"bound {bound_id!r} not computable for quantity {q!r}")


def _ratio(out: _Outcome, bres: bounds_mod.BoundResult) -> object:
    if bres.value <= 0:
        return "undefined"
    exact = float(out.exact)
    if bres.compare_power != 1:
        exact = exact ** bres.compare_power
    if not bres.bounds_error:
        return exact / bres.value
    # error-type bound: compare |exact - main| against the bound
    if out.sizes and min(out.sizes) < 2:
        return "undefined"
    if out.main is not None:
        main = float(out.main)
    elif bres.main_term is not None:
        main = float(bres.main_term)
    else:
        main = 0.0
    return abs(exact - main) / bres.value


def _rows_for_task(cfg: ExperimentConfig, p: int,
                   desc_tuple: tuple[str, ...]) -> list[ReportRow]:
    t0 = time.perf_counter()
    ctx = build_context(p)
    outcome = _compute_outcome(ctx, cfg, desc_tuple)
    base_ms = (time.perf_counter() - t0) * 1000

    rows = []
    common = dict(p=p, quantity=cfg.quantity, descriptors=outcome.descriptors,
                  seed=cfg.seed)
    if outcome.skip_reason is not None:
        for bound_id in (cfg.bound_ids or ("",)):
            rows.append(ReportRow(**common, exact_value=None, main_term=None,
                                  bound_id=bound_id, bound_value=None,
                                  case_label=outcome.skip_reason, ratio=None,
                                  hypotheses_ok="", runtime_ms=int(base_ms)))
        return rows
    if not cfg.bound_ids:
        rows.append(ReportRow(**common, exact_value=outcome.exact,
                              main_term=outcome.main, bound_id="",
                              bound_value=None, case_label="", ratio=None,
                              hypotheses_ok="", runtime_ms=int(base_ms)))
        return rows
    for bound_id in cfg.bound_ids:
        t1 = time.perf_counter()
        bres = _bound_for_outcome(ctx, cfg, outcome, bound_id)
        ms = base_ms + (time.perf_counter() - t1) * 1000
        main = outcome.main if outcome.main is not None else bres.main_term
        rows.append(ReportRow(
            **common, exact_value=outcome.exact, main_term=main,
            bound_id=bound_id, bound_value=bres.value, case_label=bres.case_label,
            ratio=_ratio(outcome, bres),
            hypotheses_ok=";".join("true" if ok else "false" for ok in bres.hypotheses_ok),
            runtime_ms=int(ms)))
    return rows


def run_sweep(cfg: ExperimentConfig, out_path: str | Path | None = None,
              render_figures: bool = False) -> list[ReportRow]:
    """Execute a sweep; write CSV (and figures on request) when a path is set."""
    cfg.validate()
    tuples = cfg.set_tuples or ((),)
    tasks = [(p, tup) for p in cfg.primes for tup in tuples]

    if cfg.workers > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            chunks = list(pool.map(lambda t: _rows_for_task(cfg, *t), tasks))
    else:
        chunks = [_rows_for_task(cfg, *t) for t in tasks]
    rows = [r for chunk in chunks for r in chunk]

    target = out_path or cfg.output
    if target is not None:
        path = Path(target)
        path.write_text(rows_to_csv(rows), encoding="utf-8")
        if render_figures:
            from .figures import render_sweep_figures
            render_sweep_figures(rows, path)
    return rows


# ---------------------------------------------------------------------------
# verification suites
# ---------------------------------------------------------------------------

@dataclass
class SuiteReport:
    name: str
    instances: int
    failures: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        lines = [f"suite {self.name}: {status} ({self.instances} instances, "
                 f"{len(self.failures)} failures)"]
        lines += [f"  counterexample: {f}" for f in self.failures[:10]]
        lines += [f"  note: {n}" for n in self.notes[:10]]
        return "\n".join(lines)


def _random_set(ctx: FieldContext, rng: SplitMix64, max_size: int,
                zero_free: bool = False) -> ResidueSet:
    hi = ctx.p - 1 if zero_free else ctx.p
    size = 2 + rng.below(min(max_size, hi) - 1)
    pool = list(range(1, ctx.p)) if zero_free else list(range(ctx.p))
    rng.shuffle(pool)
    return ResidueSet(p=ctx.p, elements=tuple(sorted(pool[:size])),
                      provenance="suite-random")


def _suite_oracle_equivalence(instances: int = 60) -> SuiteReport:
    rep = SuiteReport(name="oracle-equivalence", instances=instances)
    primes = (7, 11, 13, 17)
    rng = SplitMix64(2024)
    for i in range(instances):
        p = primes[rng.below(len(primes))]
        ctx = build_context(p)
        k = 1 + rng.below(2)
        fam = [_random_set(ctx, rng, 5) for _ in range(k)]
        a = counting.product_difference_counts(ctx, fam, method="brute")
        b = counting.product_difference_counts(ctx, fam, method="convolution")
        if a != b:
            rep.failures.append(f"instance {i}: p={p} sets={[s.elements for s in fam]}")
    return rep


def _suite_holder(instances: int = 100) -> SuiteReport:
    rep = SuiteReport(name="holder", instances=instances)
    primes = (7, 11, 13, 17)
    rng = SplitMix64(777)
    for i in range(instances):
        p = primes[rng.below(len(primes))]
        ctx = build_context(p)
        k = 1 + rng.below(2)
        fam = [_random_set(ctx, rng, 5) for _ in range(k)]
        star = counting.difference_product_energy(ctx, fam, "star", method="brute")
        rhs = 1
        for s in fam:
            rhs *= counting.difference_product_energy(ctx, [s] * k, "star", method="brute")
        if star ** k > rhs:
            rep.failures.append(f"instance {i} star: p={p} {star}^{k} > {rhs}")
        tilde = counting.difference_product_energy(ctx, fam, "tilde", method="brute")
        rhs_t = Fraction(1)
        for s in fam:
            rhs_t *= counting.difference_product_energy(ctx, [s] * k, "tilde", method="brute")
        if tilde ** k > rhs_t:
            rep.failures.append(f"instance {i} tilde: p={p} {tilde}^{k} > {rhs_t}")
    return rep


def _suite_vinogradov_exact(instances: int = 100) -> SuiteReport:
    rep = SuiteReport(name="vinogradov-exact", instances=instances)
    primes = (11, 31, 61, 101)
    rng = SplitMix64(31337)

    def draw_coeff() -> complex:
        amp = rng.below(1000) / 1000.0
        ang = 2 * math.pi * rng.below(3600) / 3600.0
        return amp * complex(math.cos(ang), math.sin(ang))

    for i in range(instances):
        p = primes[rng.below(len(primes))]
        ctx = build_context(p)
        s1 = _random_set(ctx, rng, 8, zero_free=True)
        s2 = _random_set(ctx, rng, 8, zero_free=True)
        alpha = {x: draw_coeff() for x in s1}
        beta = {y: draw_coeff() for y in s2}
        oracle = sums.WeightOracle(arity=2, evaluators=(
            lambda coords, beta=beta: beta[coords[1]],
            lambda coords, alpha=alpha: alpha[coords[0]],
        ))
        res = sums.multilinear_sum(ctx, [s1, s2], weights=oracle)
        cap = math.sqrt(p * sum(abs(v) ** 2 for v in alpha.values())
                        * sum(abs(v) ** 2 for v in beta.values()))
        if res.modulus > cap * (1 + 1e-9):
            rep.failures.append(f"instance {i}: p={p} |S|={res.modulus} > {cap}")
    return rep


def _suite_character_identity(instances: int = 64) -> SuiteReport:
    rep = SuiteReport(name="character-identity", instances=instances)
    primes = (7, 11, 13, 17, 19, 23, 29, 31)
    rng = SplitMix64(4242)
    for i in range(instances):
        p = primes[rng.below(len(primes))]
        ctx = build_context(p)
        k = 1 + rng.below(2)
        fam = [_random_set(ctx, rng, 6) for _ in range(k)]
        star = counting.difference_product_energy(ctx, fam, "star")
        tilde = counting.difference_product_energy(ctx, fam, "tilde")
        est = counting.character_energy_estimate(ctx, fam)
        est_np = counting.character_energy_estimate(ctx, fam, nonprincipal_only=True)
        if abs(est - float(star)) > 1e-6 * max(1.0, float(star)):
            rep.failures.append(f"instance {i}: star {star} vs characters {est} (p={p})")
        if abs(est_np - float(tilde)) > 1e-6 * max(1.0, abs(float(tilde))):
            rep.failures.append(f"instance {i}: tilde {tilde} vs characters {est_np} (p={p})")
        if tilde < 0:
            rep.failures.append(f"instance {i}: tilde negative: {tilde} (p={p})")
    return rep


def _suite_parseval(instances: int = 40) -> SuiteReport:
    rep = SuiteReport(name="parseval", instances=instances)
    # additive-character orthogonality first
    for p in (7, 101):
        ctx = build_context(p)
        for a in range(1, min(p, 12)):
            s = sum(ctx.e(a * x) for x in range(p))
            if abs(s) > 1e-9 * p:
                rep.failures.append(f"orthogonality: p={p} a={a} |sum|={abs(s)}")
    rng = SplitMix64(99)
    primes = (101, 499, 1009)
    for i in range(instances):
        p = primes[rng.below(len(primes))]
        ctx = build_context(p)
        s = _random_set(ctx, rng, 40)
        _l1, l2_sq = sums.fourier_l1(ctx, s)
        expect = p * len(s)
        if abs(l2_sq - expect) > 1e-6 * expect:
            rep.failures.append(f"instance {i}: p={p} |A|={len(s)} l2^2={l2_sq} != {expect}")
    return rep


def _suite_mass_conservation(instances: int = 60) -> SuiteReport:
    rep = SuiteReport(name="mass-conservation", instances=instances)
    primes = (7, 11, 13, 17, 19)
    rng = SplitMix64(5150)
    for i in range(instances):
        p = primes[rng.below(len(primes))]
        ctx = build_context(p)
        k = 1 + rng.below(2)
        fam = [_random_set(ctx, rng, 5) for _ in range(k)]
        pc = counting.product_difference_counts(ctx, fam)
        total = 1
        for s in fam:
            total *= len(s) ** 2
        if pc.zero_count + sum(pc.nonzero) != total:
            rep.failures.append(f"instance {i}: p={p} mass off")  # ctor should prevent this
    return rep


def _suite_incidence_check(instances: int = 30) -> SuiteReport:
    rep = SuiteReport(name="incidence-check", instances=instances)
    primes = (7, 11, 13)
    rng = SplitMix64(8080)
    for i in range(instances):
        p = primes[rng.below(len(primes))]
        ctx = build_context(p)
        n_pts, n_pls = 4 + rng.below(20), 4 + rng.below(20)
        points, planes = _random_point_plane_instance(ctx, n_pts, n_pls, seed=rng.below(1 << 30))
        res = counting.incidence_count(ctx, points, planes)
        slow = sum(1 for (a1, a2, a3, b) in planes for (x, y, z) in points
                   if (a1 * x + a2 * y + a3 * z) % p == b % p)
        if res.incidences != slow:
            rep.failures.append(f"instance {i}: p={p} fast {res.incidences} != slow {slow}")
        bound = bounds_mod.rudnev_bound(p, len(points), len(planes), res.max_collinear)
        if res.incidences > bound.value:
            note = ("recorded discrepancy (constant-1 inequality exceeded): "
                    f"p={p} |P|={len(points)} |Pi|={len(planes)} k={res.max_collinear} "
                    f"I={res.incidences} bound={bound.value:.3f} "
                    f"hyp_ok={bound.all_hypotheses_ok}")
            rep.notes.append(note)
    return rep


def _suite_weil_check(instances: int = 60) -> SuiteReport:
    rep = SuiteReport(name="weil-check", instances=instances)
    primes = (101, 211, 499)
    rng = SplitMix64(1601)
    for i in range(instances):
        p = primes[rng.below(len(primes))]
        ctx = build_context(p)
        t = 2 + rng.below(3)
        ks = []
        while len(ks) < t:
            k = 1 + rng.below(10)
            if k not in ks:
                ks.append(k)
        terms = tuple((1 + rng.below(p - 1), k) for k in ks)
        poly = SparsePoly(terms=terms)
        chi = rng.below(p - 1)
        res = sums.mordell_sum(ctx, poly, chi_index=chi)
        cap = bounds_mod.weil_bound(p, poly).value
        if res.modulus > cap * (1 + 1e-9):
            rep.failures.append(f"instance {i}: p={p} poly={terms} chi={chi} "
                                f"|T|={res.modulus} > {cap}")
    return rep


VERIFY_SUITES = {
    "holder": _suite_holder,
    "vinogradov-exact": _suite_vinogradov_exact,
    "character-identity": _suite_character_identity,
    "oracle-equivalence": _suite_oracle_equivalence,
    "parseval": _suite_parseval,
    "mass-conservation": _suite_mass_conservation,
    "incidence-check": _suite_incidence_check,
    "weil-check": _suite_weil_check,
}


def verify_suite(name: str, instances: int | None = None) -> SuiteReport:
    """Run one verification suite by registry name."""
    if name not in VERIFY_SUITES:
        raise ValueError(f"unknown suite {name!r}; registry: "
                         f"{', '.join(sorted(VERIFY_SUITES))}")
    fn = VERIFY_SUITES[name]
    return fn(instances) if instances is not None else fn()
