import cmath
import math

import pytest

from primesums.field import build_context
from primesums.sets import GapSpec, SparsePoly, SplitMix64, residue_set
from primesums.sums import (BudgetExceededError, WeightOracle, fourier_l1,
                            mordell_sum, multilinear_sum, random_phase_weights,
                            unit_weights, weight_ignores_own_coordinate,
                            weyl_gap_sum)


def brute_multilinear(ctx, sets, oracle=None):
    """Plain double-precision loop oracle, no numpy, no compensation."""
    import itertools
    p = ctx.p
    total = 0j
    for coords in itertools.product(*(s.elements for s in sets)):
        prod = 1
        for c in coords:
            prod = prod * c % p
        w = 1.0 + 0j
        if oracle is not None:
            for f in oracle.evaluators:
                w *= f(coords)
        total += w * cmath.exp(2j * math.pi * prod / p)
    return total


def test_multilinear_unit_frozen():
    ctx = build_context(5)
    full = residue_set(5, [1, 2, 3, 4])
    r = multilinear_sum(ctx, [full, full])
    # sum over x,y != 0 of e_5(xy): inner sum is -1 for each x, so -4 total
    assert r.value == pytest.approx(-4.0 + 0j, abs=1e-9)
    assert r.modulus == pytest.approx(4.0, abs=1e-9)
    assert r.tuples_evaluated == 16


def test_multilinear_unit_matches_brute_loop():
    rng = SplitMix64(60)
    for _ in range(12):
        p = [7, 11, 13, 17][rng.below(4)]
        ctx = build_context(p)
        sets = []
        for _ in range(1 + rng.below(3)):
            pool = list(range(1, p))
            rng.shuffle(pool)
            sets.append(residue_set(p, pool[:2 + rng.below(4)]))
        got = multilinear_sum(ctx, sets).value
        want = brute_multilinear(ctx, sets)
        assert got == pytest.approx(want, abs=1e-8)


def test_multilinear_random_weights_reproducible_and_match_brute():
    ctx = build_context(11)
    a = residue_set(11, [1, 3, 4])
    b = residue_set(11, [2, 5, 7, 9])
    r1 = multilinear_sum(ctx, [a, b], weights=("random", 77))
    r2 = multilinear_sum(ctx, [a, b], weights=("random", 77))
    assert r1.value == r2.value
    r3 = multilinear_sum(ctx, [a, b], weights=("random", 78))
    assert r3.value != r1.value
    oracle = random_phase_weights(2, 77)
    assert r1.value == pytest.approx(brute_multilinear(ctx, [a, b], oracle), abs=1e-9)


def test_random_weights_ignore_own_coordinate():
    ctx = build_context(13)
    sets = [residue_set(13, [1, 2, 3, 4]), residue_set(13, [5, 6, 7]),
            residue_set(13, [8, 9])]
    oracle = random_phase_weights(3, 4)
    assert weight_ignores_own_coordinate(oracle, ctx, sets)
    for f in oracle.evaluators:
        assert abs(abs(f((1, 5, 8))) - 1.0) < 1e-12


def test_weight_modulus_enforced():
    ctx = build_context(7)
    a = residue_set(7, [1, 2])
    bad = WeightOracle(arity=1, evaluators=((lambda coords: 2.0 + 0j),))
    with pytest.raises(ValueError, match="modulus"):
        multilinear_sum(ctx, [a], weights=bad)


def test_multilinear_guards():
    ctx = build_context(7)
    with pytest.raises(ValueError):
        multilinear_sum(ctx, [])
    with pytest.raises(ValueError, match="zero-free"):
        multilinear_sum(ctx, [residue_set(7, [0, 1])])
    with pytest.raises(BudgetExceededError) as exc:
        multilinear_sum(ctx, [residue_set(7, [1, 2, 3])] * 3, budget=8)
    assert exc.value.required == 27 and exc.value.budget == 8
    with pytest.raises(ValueError, match="arity"):
        multilinear_sum(ctx, [residue_set(7, [1])], weights=unit_weights(2))


def test_mordell_frozen_quadratic():
    ctx = build_context(5)
    r = mordell_sum(ctx, SparsePoly(((1, 2),)), 0)
    # sum over x != 0 of e_5(x^2) = 2(e(1) + e(4)) = 4 cos(2 pi / 5)
    assert r.value == pytest.approx(4 * math.cos(2 * math.pi / 5), abs=1e-9)


def test_mordell_degenerate_exponent():
    # Psi(x) = b x^(p-1) is constant b on units: sum is (p-1) e_p(b)
    ctx = build_context(11)
    for b in (1, 5):
        r = mordell_sum(ctx, SparsePoly(((b, 10),)), 0)
        assert r.value == pytest.approx(10 * cmath.exp(2j * math.pi * b / 11), abs=1e-9)


def test_mordell_brute_with_character():
    ctx = build_context(13)
    poly = SparsePoly(((2, 3), (1, 7)))
    for j in (0, 1, 5):
        r = mordell_sum(ctx, poly, j)
        want = sum(ctx.mult_char(j, x) * cmath.exp(2j * math.pi * poly(x, 13) / 13)
                   for x in range(1, 13))
        assert r.value == pytest.approx(want, abs=1e-9)


def test_mordell_guards():
    ctx = build_context(7)
    with pytest.raises(ValueError):
        mordell_sum(ctx, SparsePoly(((1, 2),)), 6)
    with pytest.raises(ValueError):
        mordell_sum(ctx, SparsePoly(((7, 2),)), 0)


def test_weyl_gap_sum_matches_direct():
    ctx = build_context(101)
    gap = GapSpec(0, (1, 10), (3, 3))
    coeffs = [1, 2, 3]  # F(a) = 1 + 2a + 3a^2
    r = weyl_gap_sum(ctx, gap, coeffs)
    elems = (11, 12, 13, 21, 22, 23, 31, 32, 33)
    want = sum(cmath.exp(2j * math.pi * ((1 + 2 * a + 3 * a * a) % 101) / 101)
               for a in elems)
    assert r.value == pytest.approx(want, abs=1e-9)
    assert r.tuples_evaluated == 9


def test_weyl_gap_improper_warns():
    ctx = build_context(5)
    with pytest.warns(UserWarning, match="not proper"):
        weyl_gap_sum(ctx, GapSpec(0, (1, 1), (2, 2)), [0, 1])


def test_fourier_l1_parseval():
    ctx = build_context(101)
    rng = SplitMix64(17)
    pool = list(range(101))
    rng.shuffle(pool)
    a = residue_set(101, pool[:23])
    l1, l2_sq = fourier_l1(ctx, a)
    assert l2_sq == pytest.approx(101 * 23, rel=1e-9)
    # the z = 0 term alone contributes |A|
    assert l1 >= 23


def test_fourier_l1_full_set():
    # indicator of all of F_p: transform is p at 0 and vanishes elsewhere
    ctx = build_context(11)
    a = residue_set(11, range(11))
    l1, l2_sq = fourier_l1(ctx, a)
    assert l1 == pytest.approx(11.0, abs=1e-6)
    assert l2_sq == pytest.approx(121.0, rel=1e-9)
