"""Homogeneous polynomial local models of isolated critical points in the plane.

A germ is ``g(x, y) = sum_i c_i x^(d-i) y^i``.  Everything here is exact: real
roots are counted with Sturm sequences, never approximated.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd

from . import polynomials as up
from .errors import DivisionFailure, MultipleLinearFactor, NotIsolated, ParseError

INFINITE = "Infinite"


@dataclass(frozen=True)
class HomogPoly2:
    """Binary form of degree ``d`` with coefficients c_0..c_d (possibly zero)."""

    d: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        c = tuple(Fraction(x) for x in self.coeffs)
        if self.d < 0 or len(c) != self.d + 1:
            raise ParseError(f"degree {self.d} form needs {self.d + 1} coefficients, got {len(c)}", module="local_model")
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def germ(cls, d: int, coeffs) -> "HomogPoly2":
        """Validated local model: degree at least 2 and not identically zero."""
        g = cls(int(d), tuple(coeffs))
        if g.d < 2:
            raise ParseError("a local model needs degree at least 2", module="local_model")
        if g.is_zero():
            raise ParseError("the zero polynomial is not a local model", module="local_model")
        return g

    @classmethod
    def zero(cls, d: int) -> "HomogPoly2":
        return cls(d, (Fraction(0),) * (d + 1))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other: "HomogPoly2") -> "HomogPoly2":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.d != other.d:
            raise ValueError("adding forms of different degree")
        return HomogPoly2(self.d, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "HomogPoly2":
        return HomogPoly2(self.d, tuple(-a for a in self.coeffs))

    def __mul__(self, other: "HomogPoly2") -> "HomogPoly2":
        out = [Fraction(0)] * (self.d + other.d + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return HomogPoly2(self.d + other.d, tuple(out))

    def scale(self, c) -> "HomogPoly2":
        return HomogPoly2(self.d, tuple(a * c for a in self.coeffs))

    def __call__(self, x, y):
        return sum(c * x ** (self.d - i) * y**i for i, c in enumerate(self.coeffs))

    def dx(self) -> "HomogPoly2":
        if self.d == 0:
            return HomogPoly2.zero(0)
        return HomogPoly2(self.d - 1, tuple(self.coeffs[i] * (self.d - i) for i in range(self.d)))

    def dy(self) -> "HomogPoly2":
        if self.d == 0:
            return HomogPoly2.zero(0)
        return HomogPoly2(self.d - 1, tuple(self.coeffs[i + 1] * (i + 1) for i in range(self.d)))

    def dehomogenize(self) -> up.Poly:
        """p(t) = g(1, t)."""
        return up.poly(self.coeffs)

    @classmethod
    def homogenize(cls, p: up.Poly, d: int) -> "HomogPoly2":
        if up.degree(p) > d:
            raise ValueError("degree too large to homogenize")
        c = list(p) + [Fraction(0)] * (d + 1 - len(p))
        return cls(d, tuple(c))

    def substitute(self, a, b, c, e) -> "HomogPoly2":
        """g(a x + b y, c x + e y)."""
        lx = HomogPoly2(1, (a, b))
        ly = HomogPoly2(1, (c, e))
        out = HomogPoly2.zero(self.d)
        for i, coef in enumerate(self.coeffs):
            if coef:
                term = HomogPoly2(0, (coef,))
                for _ in range(self.d - i):
                    term = term * lx
                for _ in range(i):
                    term = term * ly
                out = out + term
        return out

    def to_text(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "*".join(p for p in (_pw("x", self.d - i), _pw("y", i)) if p)
            terms.append(f"{c}*{mono}" if mono else f"{c}")
        return " + ".join(terms) if terms else "0"


def _pw(var, k):
    if k == 0:
        return ""
    return var if k == 1 else f"{var}^{k}"


def divide_exact(a: HomogPoly2, b: HomogPoly2) -> HomogPoly2:
    """Exact quotient a / b of forms; DivisionFailure if b does not divide a."""
    if b.is_zero():
        raise DivisionFailure("division by the zero form")
    if a.is_zero():
        return HomogPoly2.zero(max(a.d - b.d, 0))
    qd = a.d - b.d
    if qd < 0:
        raise DivisionFailure("divisor has larger degree than dividend")
    pa, pb = a.dehomogenize(), b.dehomogenize()
    q, r = up.divmod_poly(pa, pb)
    if r or up.degree(q) > qd:
        raise DivisionFailure(f"{b.to_text()} does not divide {a.to_text()}")
    out = HomogPoly2.homogenize(q, qd)
    if out * b != a:
        raise DivisionFailure(f"{b.to_text()} does not divide {a.to_text()}")
    return out


@dataclass(frozen=True)
class FactorProfile:
    """Real factorization data of a form.

    ``quad_groups`` holds ``(multiplicity, count)`` pairs: ``count`` distinct
    irreducible real quadratic factors occur with that multiplicity.
    """

    a: int
    quad_groups: tuple[tuple[int, int], ...]
    D: HomogPoly2
    has_multiple_linear: bool = False

    @property
    def b(self) -> int:
        return sum(cnt for _, cnt in self.quad_groups)

    @property
    def q(self) -> tuple[int, ...]:
        return tuple(sorted(m for m, cnt in self.quad_groups for _ in range(cnt)))

    @property
    def squarefree(self) -> bool:
        return all(m == 1 for m, _ in self.quad_groups)

    def to_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "q": list(self.q), "D": self.D.to_text()}


def factor_profile(g: HomogPoly2) -> FactorProfile:
    if g.is_zero():
        raise ParseError("the zero polynomial has no factor profile", module="local_model")
    p = g.dehomogenize()
    x_power = g.d - up.degree(p)
    if x_power >= 2:
        raise MultipleLinearFactor(f"x^{x_power} divides {g.to_text()}: the critical point is not isolated")
    parts = up.yun(p)
    a = x_power
    groups = []
    d_poly: up.Poly = (Fraction(1),)
    for m in sorted(parts):
        s = parts[m]
        r = up.count_real_roots(s)
        if m >= 2 and r:
            raise MultipleLinearFactor(f"{g.to_text()} has a real linear factor of multiplicity {m}")
        if m == 1:
            a += r
        cnt = (up.degree(s) - r) // 2
        if cnt:
            groups.append((m, cnt))
        if m >= 2:
            d_poly = up.mul(d_poly, up.power(s, m - 1))
    D = HomogPoly2.homogenize(d_poly, up.degree(d_poly))
    _check_gcd(g, D)
    assert a + 2 * sum(m * c for m, c in groups) == g.d
    return FactorProfile(a, tuple(groups), D)


def _check_gcd(g: HomogPoly2, D: HomogPoly2) -> None:
    gx, gy = g.dx().dehomogenize(), g.dy().dehomogenize()
    expected = up.gcd(gx, gy)
    if up.monic(D.dehomogenize()) != expected:
        raise DivisionFailure(f"assembled D = {D.to_text()} is not the gcd of the partials of {g.to_text()}")


@dataclass(frozen=True)
class LocalType:
    """S/P/N verdict; N-points carry subtype NN or NZ, the cyclic order n_z and k_z."""

    tag: str
    subtype: str | None = None
    n_z: int | None = None

    def __post_init__(self):
        if self.tag not in ("S", "P", "N"):
            raise ValueError(f"unknown local type {self.tag!r}")
        if self.tag == "N":
            if self.subtype not in (None, "NN", "NZ"):
                raise ValueError(f"unknown N subtype {self.subtype!r}")
            if self.n_z is not None and self.n_z < 1:
                raise ValueError("n_z must be positive")

    @property
    def k_z(self) -> int | None:
        return framing_cardinality(self.n_z) if self.n_z is not None else None

    @property
    def label(self) -> str:
        return self.subtype or self.tag

    def to_dict(self) -> dict:
        d = {"tag": self.tag}
        if self.tag == "N":
            d["subtype"] = self.subtype
            d["n_z"] = self.n_z
            d["k_z"] = self.k_z
        return d


def framing_cardinality(n: int) -> int:
    if n < 1:
        raise ValueError("n_z must be a positive integer")
    return 2 * n if n % 2 else n


def reduced_hamiltonian(g: HomogPoly2, profile: FactorProfile | None = None) -> tuple[HomogPoly2, HomogPoly2]:
    """(-g_y / D, g_x / D), checked to annihilate g."""
    if profile is None:
        profile = factor_profile(g)
    gx, gy = g.dx(), g.dy()
    F1 = -divide_exact(gy, profile.D)
    F2 = divide_exact(gx, profile.D)
    if not (F1 * gx + F2 * gy).is_zero():
        raise DivisionFailure("reduced field does not annihilate g")
    return F1, F2


@dataclass(frozen=True)
class LinearPartClass:
    matrix: tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]
    cls: str  # Rotation | NonzeroNilpotent | Zero | Hyperbolic

    def to_dict(self) -> dict:
        return {"matrix": [[str(x) for x in row] for row in self.matrix], "class": self.cls}


def linear_part(F) -> LinearPartClass:
    """Classify the linear part of a planar vector field F = (F1, F2) of forms.

    Besides the three classes realised by S/P/N points, real eigenvalues that
    are not all zero are reported as ``Hyperbolic`` (e.g. the field of xy).
    """
    F1, F2 = F
    rows = []
    for comp in (F1, F2):
        if comp.d == 1:
            rows.append((comp.coeffs[0], comp.coeffs[1]))
        elif comp.is_zero() or comp.d >= 2:
            rows.append((Fraction(0), Fraction(0)))
        else:
            raise ValueError("vector field with a constant term")
    (p, q), (r, s) = rows
    tr, det = p + s, p * s - q * r
    if not any((p, q, r, s)):
        cls = "Zero"
    elif tr * tr - 4 * det < 0:
        cls = "Rotation"
    elif tr == 0 and det == 0:
        cls = "NonzeroNilpotent"
    else:
        cls = "Hyperbolic"
    return LinearPartClass(tuple(rows), cls)


def _complex_coefficients(g: HomogPoly2):
    """Coefficients a_k of g = sum_k a_k z^k zbar^(d-k), as (re, im) pairs up to 2^-d."""
    d = g.d
    out = []
    for k in range(d + 1):
        re = im = Fraction(0)
        for j, c in enumerate(g.coeffs):
            if not c:
                continue
            s = 0
            for qq in range(max(0, k - (d - j)), min(j, k) + 1):
                s += comb(d - j, k - qq) * comb(j, qq) * (-1) ** (j - qq)
            # (-i)^j
            unit = [(1, 0), (0, -1), (-1, 0), (0, 1)][j % 4]
            re += c * s * unit[0]
            im += c * s * unit[1]
        out.append((re, im))
    return out


def symmetry_order(g: HomogPoly2):
    """Order of the group of rotations r with g o r = c g, c > 0, or INFINITE.

    In the complex coordinate a rotation by t multiplies the z^k zbar^(d-k)
    term by exp(i t (2k - d)), so the group is cut out by the exponents
    2k - d of the non-vanishing terms.
    """
    exps = [abs(2 * k - g.d) for k, (re, im) in enumerate(_complex_coefficients(g)) if re or im]
    exps = [e for e in exps if e]
    if not exps:
        return INFINITE
    n = 0
    for e in exps:
        n = gcd(n, e)
    return n


def classify(g: HomogPoly2, n_z_override: int | None = None) -> LocalType:
    prof = factor_profile(g)
    if prof.a > 0:
        return LocalType("S")
    if prof.b == 1:
        return LocalType("P")
    lp = linear_part(reduced_hamiltonian(g, prof))
    if lp.cls == "Rotation":
        raise AssertionError("an N-point cannot have a rotational linear part")
    subtype = "NZ" if lp.cls == "Zero" else "NN"
    n_z = n_z_override if n_z_override is not None else symmetry_order(g)
    return LocalType("N", subtype, n_z)


def _rank(rows) -> int:
    m = [list(r) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pr = m[rank]
        for i in range(rank + 1, len(m)):
            if m[i][col]:
                f = m[i][col] / pr[col]
                m[i] = [a - f * b for a, b in zip(m[i], pr)]
        rank += 1
    return rank


@dataclass(frozen=True)
class MilnorReport:
    mu_real: int | None  # None: infinite
    mu_complex: int | None  # None: g not squarefree (infinite)
    by_degree: tuple[int, ...]

    def to_dict(self) -> dict:
        return {"mu_real": self.mu_real, "mu_complex": self.mu_complex, "finite": self.mu_real is not None}


def milnor_number(g: HomogPoly2) -> MilnorReport:
    """Codimension of the Jacobian ideal, computed one degree at a time.

    The quotient is graded; the ideal swallows a whole degree level exactly
    when the quotient is finite-dimensional, and for an isolated singularity
    of degree d this happens by degree 2d - 3.  We scan up to 2d.
    """
    try:
        prof = factor_profile(g)
    except MultipleLinearFactor as exc:
        raise NotIsolated(str(exc)) from exc
    gx, gy = g.dx(), g.dy()
    e = g.d - 1
    dims = []
    saturated = False
    for k in range(2 * g.d + 1):
        if k < e:
            dims.append(k + 1)
            continue
        rows = []
        for j in range(k - e + 1):
            mono = HomogPoly2(k - e, tuple(Fraction(int(i == j)) for i in range(k - e + 1)))
            for part in (gx, gy):
                if not part.is_zero():
                    rows.append((mono * part).coeffs)
        r = _rank(rows) if rows else 0
        dims.append(k + 1 - r)
        if r == k + 1:
            saturated = True
            break
    mu_c = (g.d - 1) ** 2 if prof.squarefree else None
    if not saturated:
        if prof.squarefree:
            raise NotIsolated(f"Jacobian ideal of squarefree {g.to_text()} did not saturate by degree {2 * g.d}")
        return MilnorReport(None, None, tuple(dims))
    mu_r = sum(dims)
    if mu_c is None or mu_r > 2 * mu_c:
        raise NotIsolated(f"finite Milnor number {mu_r} for non-squarefree {g.to_text()} (expected infinite)")
    return MilnorReport(mu_r, mu_c, tuple(dims))
