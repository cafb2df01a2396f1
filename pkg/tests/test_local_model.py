import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from krtool.errors import DivisionFailure, MultipleLinearFactor, NotIsolated, ParseError
from krtool.local_model import (
    INFINITE,
    HomogPoly2,
    classify,
    divide_exact,
    factor_profile,
    framing_cardinality,
    linear_part,
    milnor_number,
    reduced_hamiltonian,
    symmetry_order,
)

F = Fraction
x, y = sympy.symbols("x y")


def form(*coeffs):
    return HomogPoly2.germ(len(coeffs) - 1, coeffs)


def from_sympy(expr):
    p = sympy.Poly(sympy.expand(expr), x, y)
    d = p.total_degree()
    return HomogPoly2.germ(d, [F(int(p.coeff_monomial(x ** (d - i) * y**i))) for i in range(d + 1)])


def to_sympy(g):
    return sum(sympy.Rational(c.numerator, c.denominator) * x ** (g.d - i) * y**i for i, c in enumerate(g.coeffs))


def milnor_oracle(g):
    """dim Q[x, y] / (g_x, g_y) from a Groebner basis, or None if infinite."""
    e = to_sympy(g)
    G = sympy.groebner([sympy.diff(e, x), sympy.diff(e, y)], x, y, order="grevlex")
    leads = [sympy.Poly(p, x, y).monoms(order="grevlex")[0] for p in G.exprs]
    if not any(a > 0 and b == 0 for a, b in leads) or not any(a == 0 and b > 0 for a, b in leads):
        return None
    bound = max(a + b for a, b in leads) + 1
    count = 0
    for i in range(bound + 1):
        for j in range(bound + 1):
            if not any(i >= a and j >= b for a, b in leads):
                count += 1
    return count


def symmetry_oracle(g, max_order=24):
    """Largest n with g(R x) = g(x) for the rotation R by 2 pi / n, found numerically."""
    angles = [k * 2 * math.pi / 97 for k in range(97)]

    def val(t):
        c, s = math.cos(t), math.sin(t)
        return sum(float(ci) * c ** (g.d - i) * s**i for i, ci in enumerate(g.coeffs))

    def rotated_equal(phi):
        return all(abs(val(t + phi) - val(t)) < 1e-9 for t in angles)

    if rotated_equal(math.sqrt(2)):
        return INFINITE
    best = 1
    for n in range(1, max_order + 1):
        if rotated_equal(2 * math.pi / n):
            best = n
    return best


TABLE = [
    ("x^2 - y^2", x**2 - y**2, "S", None),
    ("xy", x * y, "S", None),
    ("(x^2+y^2)", x**2 + y**2, "P", None),
    ("(x^2+y^2)^2", (x**2 + y**2) ** 2, "P", None),
    ("(x^2+y^2)^3", (x**2 + y**2) ** 3, "P", None),
    ("(x^2+y^2)(x^2+2y^2)", (x**2 + y**2) * (x**2 + 2 * y**2), "N", "NZ"),
    ("x^3 - 3xy^2", x**3 - 3 * x * y**2, "S", None),
]


@pytest.mark.parametrize("label, expr, tag, subtype", TABLE, ids=[row[0] for row in TABLE])
def test_classification_table(label, expr, tag, subtype):
    lt = classify(from_sympy(expr))
    assert lt.tag == tag
    assert lt.subtype == subtype


@pytest.mark.parametrize("expr", [x**2 * y, x * y**2, x**3, y**3, (x - y) ** 2 * (x**2 + y**2)])
def test_multiple_linear_factor(expr):
    g = from_sympy(expr)
    with pytest.raises(MultipleLinearFactor):
        classify(g)
    with pytest.raises(NotIsolated):
        milnor_number(g)


MILNOR_CASES = [
    x**2 + y**2,
    x**2 - y**2,
    x * y,
    x**3 - 3 * x * y**2,
    x**3 + y**3,
    x * y * (x - y),
    (x**2 + y**2) * (x**2 + 2 * y**2),
    x * y * (x**2 + y**2),
    x**4 + y**4,
    (x**2 + y**2) ** 2,
    (x**2 + y**2) ** 3,
    (x**2 + y**2) ** 2 * (x**2 + 3 * y**2),
]


@pytest.mark.parametrize("expr", MILNOR_CASES, ids=[str(e) for e in MILNOR_CASES])
def test_milnor_matches_groebner(expr):
    g = from_sympy(expr)
    assert milnor_number(g).mu_real == milnor_oracle(g)


def test_milnor_values():
    assert milnor_number(form(1, 0, 1)).mu_real == 1
    assert milnor_number(form(1, 0, -3, 0)).mu_real == 4
    assert milnor_number(from_sympy((x**2 + y**2) ** 2)).mu_real is None


squarefree_forms = st.integers(2, 4).flatmap(
    lambda d: st.lists(st.integers(-4, 4), min_size=d + 1, max_size=d + 1).map(lambda c: (d, c))
)


@given(squarefree_forms)
def test_milnor_squarefree_bounds(dc):
    d, c = dc
    if not any(c):
        return
    g = HomogPoly2.germ(d, c)
    try:
        prof = factor_profile(g)
    except MultipleLinearFactor:
        return
    if not prof.squarefree:
        return
    mu = milnor_number(g)
    assert mu.mu_complex == (d - 1) ** 2
    assert mu.mu_real <= 2 * mu.mu_complex
    assert mu.mu_real == milnor_oracle(g)


unimodular = st.sampled_from([(1, 1, 0, 1), (1, 0, 2, 1), (2, 1, 1, 1), (0, 1, -1, 0), (1, -3, 0, 1), (3, 2, 1, 1)])


@pytest.mark.parametrize("expr", MILNOR_CASES[:9], ids=[str(e) for e in MILNOR_CASES[:9]])
@given(m=unimodular)
def test_linear_change_invariance(expr, m):
    g = from_sympy(expr)
    h = g.substitute(*[F(v) for v in m])
    assert milnor_number(h).mu_real == milnor_number(g).mu_real
    a, b = classify(g), classify(h)
    assert (a.tag, a.subtype) == (b.tag, b.subtype)


SYMMETRY_CASES = [
    (x**2 + y**2, INFINITE),
    ((x**2 + y**2) ** 2, INFINITE),
    (x**2 + 2 * y**2, 2),
    ((x**2 + y**2) * (x**2 + 2 * y**2), 2),
    ((x**2 + 2 * y**2) * (2 * x**2 + y**2), 4),
    ((x**2 + 2 * y**2) * (x**2 + 3 * y**2), 2),
    (x**3 - 3 * x * y**2, 3),
    (x * y, 2),
    (x**4 - 6 * x**2 * y**2 + y**4 + 10 * (x**2 + y**2) ** 2, 4),
]


@pytest.mark.parametrize("expr, order", SYMMETRY_CASES, ids=[str(e) for e, _ in SYMMETRY_CASES])
def test_symmetry_order(expr, order):
    g = from_sympy(expr)
    assert symmetry_order(g) == order == symmetry_oracle(g)


@given(st.lists(st.integers(-3, 3), min_size=5, max_size=5))
def test_symmetry_order_random_quartics(c):
    if not any(c):
        return
    g = HomogPoly2.germ(4, c)
    got = symmetry_order(g)
    assert got == symmetry_oracle(g)
    if got != INFINITE:
        assert got % 2 == 0  # even degree forms are invariant under the half turn


def test_framing_parity():
    for n in range(1, 11):
        assert framing_cardinality(n) == (2 * n if n % 2 else n)
    with pytest.raises(ValueError):
        framing_cardinality(0)


def test_n_point_orders_and_override():
    lt = classify(from_sympy((x**2 + 2 * y**2) * (2 * x**2 + y**2)))
    assert (lt.tag, lt.n_z, lt.k_z) == ("N", 4, 4)
    lt = classify(from_sympy((x**2 + y**2) * (x**2 + 2 * y**2)), n_z_override=3)
    assert (lt.n_z, lt.k_z) == (3, 6)


def test_reduced_hamiltonian_annihilates():
    for expr in MILNOR_CASES:
        g = from_sympy(expr)
        F1, F2 = reduced_hamiltonian(g)
        assert (F1 * g.dx() + F2 * g.dy()).is_zero()


def test_reduced_hamiltonian_divides_by_d():
    g = from_sympy((x**2 + y**2) ** 3)
    prof = factor_profile(g)
    assert prof.q == (3,) and prof.a == 0
    assert prof.D == from_sympy((x**2 + y**2) ** 2)
    F1, F2 = reduced_hamiltonian(g, prof)
    assert linear_part((F1, F2)).cls == "Rotation"


@pytest.mark.parametrize(
    "expr, cls",
    [
        (x**2 + y**2, "Rotation"),
        (x * y, "Hyperbolic"),
        (x**2 - y**2, "Hyperbolic"),
        (x**3 - 3 * x * y**2, "Zero"),
        ((x**2 + y**2) * (x**2 + 2 * y**2), "Zero"),
    ],
)
def test_linear_part_classes(expr, cls):
    assert linear_part(reduced_hamiltonian(from_sympy(expr))).cls == cls


def test_linear_part_nilpotent():
    # F = (y, 0) has a nonzero nilpotent linear part
    F1 = HomogPoly2(1, (F(0), F(1)))
    F2 = HomogPoly2.zero(1)
    assert linear_part((F1, F2)).cls == "NonzeroNilpotent"


def test_factor_profile_counts():
    prof = factor_profile(from_sympy(x * y * (x**2 + y**2)))
    assert (prof.a, prof.b) == (2, 1)
    prof = factor_profile(from_sympy((x**2 + y**2) ** 2 * (x**2 + 3 * y**2)))
    assert prof.q == (1, 2)


def test_divide_exact():
    a = from_sympy((x + y) * (x**2 + y**2))
    assert divide_exact(a, from_sympy(x**2 + y**2)) == HomogPoly2(1, (F(1), F(1)))
    with pytest.raises(DivisionFailure):
        divide_exact(a, from_sympy(x**2 - y**2))
    # y divides x y even though dehomogenizing y loses its x-part
    assert divide_exact(from_sympy(x * y), HomogPoly2(1, (F(0), F(1)))) == HomogPoly2(1, (F(1), F(0)))


def test_germ_validation():
    with pytest.raises(ParseError):
        HomogPoly2.germ(2, [1, 0])
    with pytest.raises(ParseError):
        HomogPoly2.germ(1, [1, 0])
    with pytest.raises(ParseError):
        HomogPoly2.germ(2, [0, 0, 0])
