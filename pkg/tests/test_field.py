import cmath
import math

import pytest

from primesums.field import (FieldContext, build_context, character_value,
                             discrete_log, is_prime)

# smallest primitive roots, OEIS A001918
SMALLEST_ROOTS = {3: 2, 5: 2, 7: 3, 11: 2, 13: 2, 17: 3, 19: 2, 23: 5,
                  41: 6, 71: 7, 97: 5, 113: 3}


def test_is_prime_small_range():
    primes = {n for n in range(2, 100) if is_prime(n)}
    assert primes == {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
                      53, 59, 61, 67, 71, 73, 79, 83, 89, 97}
    assert not is_prime(1)
    assert not is_prime(0)
    assert not is_prime(-7)
    assert is_prime(10007)
    assert not is_prime(10007 * 10009)


@pytest.mark.parametrize("p,g", sorted(SMALLEST_ROOTS.items()))
def test_smallest_primitive_root(p, g):
    assert build_context(p).g == g


@pytest.mark.parametrize("bad", [1, 2, 4, 9, 15, 91])
def test_build_context_rejects_non_odd_primes(bad):
    with pytest.raises(ValueError):
        build_context(bad)


def test_dlog_table_round_trip():
    ctx = build_context(101)
    assert ctx.dlog[0] == -1
    assert ctx.dlog[1] == 0
    assert ctx.dlog[ctx.g] == 1
    for x in range(1, 101):
        assert ctx.gpow[ctx.dlog[x]] == x
    assert sorted(ctx.dlog[1:]) == list(range(100))


def test_discrete_log_frozen_value():
    ctx = build_context(7)
    # 3^3 = 27 = 6 (mod 7)
    assert discrete_log(ctx, 6) == 3
    with pytest.raises(ValueError):
        discrete_log(ctx, 0)


def test_additive_character_basics():
    ctx = build_context(11)
    assert ctx.e(0) == pytest.approx(1.0)
    assert ctx.e(11) == pytest.approx(1.0)
    z = ctx.e(1)
    assert abs(z) == pytest.approx(1.0)
    assert z == pytest.approx(cmath.exp(2j * math.pi / 11))
    # group law e(u)e(v) = e(u+v)
    for u in range(11):
        for v in range(11):
            assert ctx.e(u) * ctx.e(v) == pytest.approx(ctx.e(u + v))


def test_additive_character_orthogonality():
    ctx = build_context(13)
    for j in range(13):
        total = sum(character_value(ctx, "additive", j, x) for x in range(13))
        expect = 13.0 if j == 0 else 0.0
        assert total == pytest.approx(expect, abs=1e-9)


def test_multiplicative_character_structure():
    ctx = build_context(13)
    # principal character is 1 on every unit
    for x in range(1, 13):
        assert ctx.mult_char(0, x) == pytest.approx(1.0)
    # chi_j(g) is the j-th power of the primitive (p-1)-th root
    w = cmath.exp(2j * math.pi / 12)
    for j in range(12):
        assert ctx.mult_char(j, ctx.g) == pytest.approx(w ** j)
    # multiplicativity
    for x in range(1, 13):
        for y in range(1, 13):
            lhs = ctx.mult_char(5, x * y % 13)
            assert lhs == pytest.approx(ctx.mult_char(5, x) * ctx.mult_char(5, y))


def test_multiplicative_character_orthogonality():
    ctx = build_context(11)
    for j in range(10):
        total = sum(ctx.mult_char(j, x) for x in range(1, 11))
        expect = 10.0 if j == 0 else 0.0
        assert total == pytest.approx(expect, abs=1e-9)


def test_character_value_guards():
    ctx = build_context(7)
    with pytest.raises(ValueError):
        character_value(ctx, "multiplicative", 1, 0)
    with pytest.raises(ValueError):
        character_value(ctx, "multiplicative", 6, 3)  # j range is [0, p-2]
    with pytest.raises(ValueError):
        character_value(ctx, "weird", 0, 1)


def test_context_is_frozen():
    ctx = build_context(7)
    assert isinstance(ctx, FieldContext)
    with pytest.raises(Exception):
        ctx.p = 11
