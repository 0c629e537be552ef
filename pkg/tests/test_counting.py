import itertools
from fractions import Fraction

import pytest

from primesums.counting import (CountVector, ProductCounts, additive_energy,
                                character_energy_estimate, cyclic_convolve,
                                difference_counts, difference_product_energy,
                                dilated_difference_energy, incidence_count,
                                product_difference_counts, _linear_schoolbook)
from primesums.field import build_context
from primesums.sets import SplitMix64, build_set, residue_set


def brute_difference_counts(p, elems):
    out = [0] * p
    for a in elems:
        for b in elems:
            out[(a - b) % p] += 1
    return out


def test_difference_counts_frozen():
    ctx = build_context(5)
    cv = difference_counts(ctx, residue_set(5, [0, 1]))
    assert list(cv.counts) == [2, 1, 0, 0, 1]
    assert cv.total == 4


def test_difference_counts_random_vs_brute():
    rng = SplitMix64(11)
    for _ in range(20):
        p = [7, 11, 13, 17][rng.below(4)]
        ctx = build_context(p)
        size = 2 + rng.below(p - 2)
        pool = list(range(p))
        rng.shuffle(pool)
        s = residue_set(p, pool[:size])
        cv = difference_counts(ctx, s)
        assert list(cv.counts) == brute_difference_counts(p, s.elements)


def test_additive_energy_frozen_and_translation_invariant():
    ctx = build_context(5)
    assert additive_energy(ctx, residue_set(5, [0, 1])) == 6
    ctx2 = build_context(13)
    s = residue_set(13, [1, 3, 9])
    e = additive_energy(ctx2, s)
    shifted = residue_set(13, [(x + 5) % 13 for x in s])
    assert additive_energy(ctx2, shifted) == e


def test_count_vector_rejects_bad_mass():
    with pytest.raises(ValueError):
        CountVector(p=5, counts=(1, 0, 0, 0, 0), total=4)


def test_product_counts_mass_conservation_enforced():
    with pytest.raises(ValueError):
        ProductCounts(p=5, nonzero=(0, 1, 0, 0, 0), zero_count=0, total=16)


def test_cyclic_convolve_frozen_small():
    # linear [1,2,3]*[4,5,6] = [4,13,28,27,18]; wrap tail onto the head
    assert cyclic_convolve([1, 2, 3], [4, 5, 6]) == [31, 31, 28]
    assert cyclic_convolve([], []) == []


def test_cyclic_convolve_methods_agree():
    rng = SplitMix64(999)
    for _ in range(15):
        m = 2 + rng.below(40)
        a = [rng.below(50) for _ in range(m)]
        b = [rng.below(50) for _ in range(m)]
        ref = cyclic_convolve(a, b, method="schoolbook")
        assert cyclic_convolve(a, b, method="auto") == ref
        assert cyclic_convolve(a, b, method="kronecker") == ref


def test_cyclic_convolve_huge_entries_stay_exact():
    # entries near 2^40 push coefficient bounds past int64; auto must switch
    rng = SplitMix64(5)
    a = [rng.below(1 << 40) for _ in range(16)]
    b = [rng.below(1 << 40) for _ in range(16)]
    ref = [sum(a[i] * b[(k - i) % 16] for i in range(16)) for k in range(16)]
    assert cyclic_convolve(a, b, method="auto") == ref
    assert cyclic_convolve(a, b, method="kronecker") == ref


def test_linear_schoolbook_identity():
    assert _linear_schoolbook([2, 0, 1], [1]) == [2, 0, 1]
    assert _linear_schoolbook([1, 1], [1, 1]) == [1, 2, 1]


def test_product_counts_frozen_p5():
    ctx = build_context(5)
    a = residue_set(5, [0, 1])
    pc = product_difference_counts(ctx, [a, a])
    assert pc.total == 16
    assert pc.zero_count == 12
    assert {i: c for i, c in enumerate(pc.nonzero) if c} == {1: 2, 4: 2}


def test_product_counts_brute_matches_convolution():
    rng = SplitMix64(314)
    for _ in range(12):
        p = [7, 11, 13][rng.below(3)]
        ctx = build_context(p)
        sets = []
        for _ in range(1 + rng.below(2)):
            pool = list(range(p))
            rng.shuffle(pool)
            sets.append(residue_set(p, pool[:2 + rng.below(4)]))
        pb = product_difference_counts(ctx, sets, method="brute")
        pc = product_difference_counts(ctx, sets, method="convolution")
        assert pb.nonzero == pc.nonzero
        assert pb.zero_count == pc.zero_count


def test_energy_variants_frozen_p5():
    ctx = build_context(5)
    a = residue_set(5, [0, 1])
    assert difference_product_energy(ctx, [a], "full") == 6
    assert difference_product_energy(ctx, [a], "star") == 2
    # tilde = star - (|A|(|A|-1))^2/(p-1) = 2 - 4/4
    t = difference_product_energy(ctx, [a], "tilde")
    assert t == Fraction(1) and isinstance(t, Fraction)


def test_energy_star_equals_brute_quadruple_count():
    ctx = build_context(7)
    a = residue_set(7, [1, 2, 5])
    star = 0
    for w1, x1, w2, x2 in itertools.product(a, repeat=4):
        l = (w1 - x1) % 7
        r = (w2 - x2) % 7
        if l and l == r:
            star += 1
    # one-set star counts (w-x) = (y-z) with both sides nonzero... for k=1
    assert difference_product_energy(ctx, [a], "star") == star


def test_character_identity_small():
    ctx = build_context(11)
    sets = [residue_set(11, [1, 2, 5]), residue_set(11, [3, 4, 7, 9])]
    star = difference_product_energy(ctx, sets, "star")
    tilde = difference_product_energy(ctx, sets, "tilde")
    assert character_energy_estimate(ctx, sets) == pytest.approx(star, rel=1e-9)
    est = character_energy_estimate(ctx, sets, nonprincipal_only=True)
    assert est == pytest.approx(float(tilde), rel=1e-9, abs=1e-6)


def test_dilated_energy_frozen_and_brute():
    ctx = build_context(5)
    n = dilated_difference_energy(ctx, residue_set(5, [1, 2]),
                                  residue_set(5, [0, 1]), residue_set(5, [0]))
    assert n == 6
    # brute force over the 6-tuples
    X, Y, Z = [1, 2], [0, 1], [0]
    brute = sum(1 for x1, x2 in itertools.product(X, repeat=2)
                for y1, y2 in itertools.product(Y, repeat=2)
                for z1, z2 in itertools.product(Z, repeat=2)
                if x1 * (y1 - z1) % 5 == x2 * (y2 - z2) % 5)
    assert n == brute


def test_dilated_energy_rejects_zero_in_x():
    ctx = build_context(5)
    with pytest.raises(ValueError):
        dilated_difference_energy(ctx, residue_set(5, [0, 1]),
                                  residue_set(5, [1]), residue_set(5, [2]))


def test_dilated_energy_dilation_invariance():
    # N(cX, Y, Z) = N(X, Y, Z) for any unit c: relabel x -> cx
    ctx = build_context(13)
    X = residue_set(13, [1, 2, 7])
    Y = residue_set(13, [0, 3, 4])
    Z = residue_set(13, [1, 5])
    base = dilated_difference_energy(ctx, X, Y, Z)
    for c in (2, 5, 12):
        Xc = residue_set(13, [c * x % 13 for x in X])
        assert dilated_difference_energy(ctx, Xc, Y, Z) == base


def test_incidence_frozen_plane_slice():
    ctx = build_context(3)
    points = [(x, y, z) for x in range(3) for y in range(3) for z in range(3)]
    res = incidence_count(ctx, points, [(1, 0, 0, 0)])
    assert res.incidences == 9
    # every line of F_3^3 has exactly 3 points
    assert res.max_collinear == 3
    assert res.max_collinear_exact


def test_incidence_duplicate_guards():
    ctx = build_context(5)
    with pytest.raises(ValueError):
        incidence_count(ctx, [(0, 0, 0), (0, 0, 0)], [(1, 0, 0, 0)])
    with pytest.raises(ValueError):
        # (2,0,0,2) is (1,0,0,1) after scaling
        incidence_count(ctx, [(0, 0, 0)], [(1, 0, 0, 1), (2, 0, 0, 2)])
    with pytest.raises(ValueError):
        incidence_count(ctx, [(0, 0, 0)], [(0, 0, 0, 1)])


def test_incidence_brute_cross_check():
    rng = SplitMix64(2718)
    p = 11
    ctx = build_context(p)
    pts = set()
    while len(pts) < 25:
        pts.add((rng.below(p), rng.below(p), rng.below(p)))
    points = sorted(pts)
    planes = []
    seen = set()
    while len(planes) < 20:
        pl = (rng.below(p), rng.below(p), rng.below(p), rng.below(p))
        if pl[:3] == (0, 0, 0):
            continue
        from primesums.counting import _canonical_plane
        c = _canonical_plane(p, pl)
        if c in seen:
            continue
        seen.add(c)
        planes.append(pl)
    res = incidence_count(ctx, points, planes)
    brute = sum(1 for (a1, a2, a3, b) in planes for (x1, x2, x3) in points
                if (a1 * x1 + a2 * x2 + a3 * x3 - b) % p == 0)
    assert res.incidences == brute
    # exact collinearity by triple enumeration
    best = 1
    for pl_pts in [points]:
        n = len(pl_pts)
        for i in range(n):
            for j in range(i + 1, n):
                cnt = 2
                ax, bx = pl_pts[i], pl_pts[j]
                d = tuple((bx[t] - ax[t]) % p for t in range(3))
                for k in range(n):
                    if k == i or k == j:
                        continue
                    e = tuple((pl_pts[k][t] - ax[t]) % p for t in range(3))
                    # e parallel to d?
                    if (d[0] * e[1] - d[1] * e[0]) % p == 0 and \
                       (d[0] * e[2] - d[2] * e[0]) % p == 0 and \
                       (d[1] * e[2] - d[2] * e[1]) % p == 0:
                        cnt += 1
                best = max(best, cnt)
    assert res.max_collinear == best
