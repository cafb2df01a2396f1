"""Exact univariate polynomial arithmetic over the rationals.

A polynomial is a tuple of Fractions, lowest degree first, with no trailing
zeros; the zero polynomial is the empty tuple.
"""

from __future__ import annotations

from fractions import Fraction

Poly = tuple  # tuple[Fraction, ...]


def poly(coeffs) -> Poly:
    c = [Fraction(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def degree(p: Poly) -> int:
    return len(p) - 1


def add(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return poly((p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n))


def neg(p: Poly) -> Poly:
    return tuple(-x for x in p)


def sub(p: Poly, q: Poly) -> Poly:
    return add(p, neg(q))


def scale(p: Poly, c) -> Poly:
    return poly(x * c for x in p)


def mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return poly(out)


def power(p: Poly, k: int) -> Poly:
    out: Poly = (Fraction(1),)
    for _ in range(k):
        out = mul(out, p)
    return out


def divmod_poly(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    if not q:
        raise ZeroDivisionError("division by the zero polynomial")
    r = list(p)
    dq = degree(q)
    lead = q[-1]
    if len(r) <= dq:
        return (), poly(r)
    quot = [Fraction(0)] * (len(r) - dq)
    for k in range(len(r) - 1, dq - 1, -1):
        c = r[k] / lead
        if c:
            quot[k - dq] = c
            for j in range(dq + 1):
                r[k - dq + j] -= c * q[j]
    return poly(quot), poly(r[:dq])


def monic(p: Poly) -> Poly:
    return scale(p, 1 / p[-1]) if p else ()


def gcd(p: Poly, q: Poly) -> Poly:
    while q:
        p, q = q, divmod_poly(p, q)[1]
    return monic(p)


def derivative(p: Poly) -> Poly:
    return poly(i * p[i] for i in range(1, len(p)))


def evaluate(p: Poly, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def sturm_sequence(p: Poly) -> list[Poly]:
    seq = [p, derivative(p)]
    while seq[-1]:
        r = divmod_poly(seq[-2], seq[-1])[1]
        seq.append(neg(r))
    seq.pop()
    return seq


def _sign_changes(signs) -> int:
    s = [x for x in signs if x != 0]
    return sum(1 for a, b in zip(s, s[1:]) if (a > 0) != (b > 0))


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def count_real_roots(p: Poly, lo=None, hi=None) -> int:
    """Distinct real roots of p in (lo, hi]; None means -inf / +inf.

    p must be squarefree for the count to equal the number of distinct roots
    (the Sturm theorem counts distinct roots in general, which is what we want).
    """
    if degree(p) < 1:
        return 0
    seq = sturm_sequence(p)

    def changes_at(x, inf_sign):
        if x is None:
            return _sign_changes(_sign(q[-1]) * (inf_sign if degree(q) % 2 else 1) for q in seq)
        return _sign_changes(_sign(evaluate(q, x)) for q in seq)

    return changes_at(lo, -1) - changes_at(hi, 1)


def root_bound(p: Poly) -> Fraction:
    """Cauchy bound: every real root lies in (-B, B)."""
    lead = abs(p[-1])
    return 1 + max((abs(c) / lead for c in p[:-1]), default=Fraction(0))


def isolate_real_roots(p: Poly) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals (lo, hi], each containing exactly one real root of p."""
    if degree(p) < 1:
        return []
    sq = squarefree_part(p)
    b = root_bound(sq)
    out = []
    stack = [(-b, b)]
    while stack:
        lo, hi = stack.pop()
        n = count_real_roots(sq, lo, hi)
        if n == 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.append((mid, hi))
        stack.append((lo, mid))
    return sorted(out)


def squarefree_part(p: Poly) -> Poly:
    return monic(divmod_poly(p, gcd(p, derivative(p)))[0])


def yun(p: Poly) -> dict[int, Poly]:
    """Squarefree decomposition: p = lc * prod s_m^m with s_m squarefree, coprime.

    Returns ``{m: s_m}`` for the non-constant parts.
    """
    if degree(p) < 1:
        return {}
    out = {}
    dp = derivative(p)
    a = gcd(p, dp)
    b = divmod_poly(p, a)[0]
    c = divmod_poly(dp, a)[0]
    d = sub(c, derivative(b))
    m = 1
    while degree(b) >= 1:
        a = gcd(b, d)
        if degree(a) >= 1:
            out[m] = a
        b = divmod_poly(b, a)[0]
        c = divmod_poly(d, a)[0]
        d = sub(c, derivative(b))
        m += 1
    return out
