from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcapelli.scalars import (
    GaussianSurd,
    I,
    Surd,
    from_units,
    inverse,
    narrow,
    scalar_from_json,
    scalar_to_json,
    sqrt_content,
    sqrt_rational,
    squarefree_split,
    units,
)

RADICANDS = [1, 2, 3, 5, 6, 7, 10, 11, 14, 15]

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)
surds = st.dictionaries(st.sampled_from(RADICANDS), rationals, max_size=4).map(Surd)
gaussians = st.builds(GaussianSurd, surds, surds)


def trial_division_square_part(n):
    """Largest f with f*f | n, by trial division."""
    f, k = 1, 2
    while k * k <= n:
        while n % (k * k) == 0:
            n //= k * k
            f *= k
        k += 1
    return f


def test_sqrt_content_examples():
    assert sqrt_content(0) == 0
    assert sqrt_content(1) == Surd.sqrt(2)
    f = trial_division_square_part(12)
    assert sqrt_content(3) == Surd({12 // (f * f): f})
    assert sqrt_content(3) == 2 * Surd.sqrt(3)


def test_mul_examples():
    r2, r6 = Surd.sqrt(2), Surd.sqrt(6)
    assert r2 * r6 == 2 * Surd.sqrt(3)
    assert r6 * 1 == r6
    assert (1 + r2) * (1 - r2) == -1


def test_inv_examples():
    assert Surd(1).inv() == 1
    assert Surd.sqrt(2).inv() == Surd.sqrt(2) / 2
    assert (1 + Surd.sqrt(2)).inv() == -1 + Surd.sqrt(2)


def test_add_examples():
    r2 = Surd.sqrt(2)
    assert r2 + (-r2) == 0
    assert Surd(Fraction(1, 2)) + Fraction(1, 3) == Fraction(5, 6)
    assert 2 * Surd.sqrt(3) + Surd.sqrt(3) == 3 * Surd.sqrt(3)


def test_squarefree_split_matches_trial_division():
    for n in range(1, 400):
        s, f = squarefree_split(n)
        assert s * f * f == n
        assert f == trial_division_square_part(n)


@pytest.mark.parametrize("k", range(11))
def test_sqrt_content_squares(k):
    assert sqrt_content(k) * sqrt_content(k) == k * (k + 1)


def test_sqrt_rational():
    assert sqrt_rational(Fraction(1, 2)) == Surd.sqrt(2) / 2
    assert sqrt_rational(Fraction(9, 4)) == Fraction(3, 2)
    with pytest.raises(ValueError):
        sqrt_rational(-1)


def test_narrow():
    assert type(narrow(Surd(3))) is int
    assert narrow(Surd(Fraction(1, 2))) == Fraction(1, 2)
    assert type(narrow(GaussianSurd(Surd.sqrt(2)))) is Surd
    assert narrow(I * I) == -1


def test_inv_with_four_radical_primes():
    x = 1 + Surd.sqrt(2) + Surd.sqrt(3) + Surd.sqrt(5) + Surd.sqrt(7)
    assert x * x.inv() == 1


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        inverse(0)


@given(surds, surds, surds)
@settings(max_examples=60, deadline=None)
def test_surd_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a


@given(surds)
@settings(max_examples=60, deadline=None)
def test_surd_inverse(a):
    if a:
        assert a * a.inv() == 1


@given(gaussians, gaussians)
@settings(max_examples=40, deadline=None)
def test_gaussian_field(a, b):
    assert a * b == b * a
    if b:
        assert (a / b) * b == a


@given(gaussians)
@settings(max_examples=40, deadline=None)
def test_json_and_units_round_trip(a):
    assert scalar_from_json(scalar_to_json(a)) == narrow(a)
    assert from_units(units(a)) == narrow(a)
