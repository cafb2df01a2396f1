import random
from fractions import Fraction

import sympy
from hypothesis import given, strategies as st

from krtool import polynomials as up

F = Fraction
t = sympy.Symbol("t")

coeff_lists = st.lists(st.integers(-6, 6), min_size=1, max_size=7)


def to_sympy(p):
    return sum(sympy.Rational(c.numerator, c.denominator) * t**i for i, c in enumerate(p))


@given(coeff_lists, coeff_lists)
def test_division_identity(a, b):
    p, q = up.poly(a), up.poly(b)
    if not q:
        return
    quo, rem = up.divmod_poly(p, q)
    assert up.add(up.mul(quo, q), rem) == p
    assert up.degree(rem) < up.degree(q)


@given(coeff_lists)
def test_real_root_count_matches_sympy(a):
    p = up.poly(a)
    if up.degree(p) < 1:
        return
    expected = len(set(sympy.real_roots(sympy.Poly(to_sympy(p), t))))
    assert up.count_real_roots(p) == expected


@given(coeff_lists)
def test_isolating_intervals(a):
    p = up.poly(a)
    if up.degree(p) < 1:
        return
    ivs = up.isolate_real_roots(p)
    assert len(ivs) == up.count_real_roots(p)
    roots = sorted(set(float(r) for r in sympy.real_roots(sympy.Poly(to_sympy(p), t))))
    for (lo, hi), r in zip(ivs, roots):
        assert lo <= r + 1e-12 and r - 1e-12 <= hi


@given(coeff_lists)
def test_yun_reassembles(a):
    p = up.poly(a)
    if up.degree(p) < 1:
        return
    parts = up.yun(p)
    prod = (F(1),)
    for m, s in parts.items():
        prod = up.mul(prod, up.power(s, m))
    assert up.monic(prod) == up.monic(p)
    for m, s in parts.items():
        assert up.degree(up.gcd(s, up.derivative(s))) == 0


def test_yun_known():
    # (t - 1)^3 (t^2 + 1)
    p = up.mul(up.power(up.poly([-1, 1]), 3), up.poly([1, 0, 1]))
    parts = up.yun(p)
    assert parts[1] == up.poly([1, 0, 1])
    assert parts[3] == up.poly([-1, 1])


def test_gcd_monic_and_sympy():
    rng = random.Random(3)
    for _ in range(50):
        a = [rng.randint(-3, 3) for _ in range(rng.randint(2, 5))]
        b = [rng.randint(-3, 3) for _ in range(rng.randint(2, 5))]
        common = [rng.randint(-2, 2), 1]
        p = up.mul(up.poly(a), up.poly(common))
        q = up.mul(up.poly(b), up.poly(common))
        if not p or not q:
            continue
        g = up.gcd(p, q)
        expected = sympy.Poly(sympy.gcd(to_sympy(p), to_sympy(q)), t).monic()
        assert to_sympy(g).expand() == expected.as_expr().expand()


def test_sturm_interval_count():
    p = up.poly([-2, 0, 1])  # t^2 - 2
    assert up.count_real_roots(p) == 2
    assert up.count_real_roots(p, F(0), F(2)) == 1
    assert up.count_real_roots(up.poly([1, 0, 1])) == 0
