"""Automorphisms (nu, o) of a framed KR-graph.

``nu`` permutes vertices and edges (base and tangent) preserving incidence,
vertex types, n_z and levels; ``o`` is any function from base edges to Z_2.
Z_2 is written multiplicatively as {+1, -1}, so the group law

    (nu1, o1) * (nu2, o2) = (nu1 o nu2,  e -> o1(nu2(e)) * o2(e))

has inverse (nu^-1, o o nu^-1): the additive "-o" is o itself since every
element of {+1, -1} is its own inverse.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import permutations, product
from math import factorial

from .errors import AutBudget, GraphMismatch
from .framed import FramedKRGraph

DEFAULT_MAX_AUT = 10**6


def max_aut_budget() -> int:
    raw = os.environ.get("KRTOOL_MAX_AUT")
    if raw is None or not raw.strip():
        return DEFAULT_MAX_AUT
    try:
        return max(int(raw), 0)
    except ValueError:
        return DEFAULT_MAX_AUT


@dataclass(frozen=True, order=True)
class GraphAut:
    """The nu-part: images of vertices and of all framed edge ids (base, then tangent)."""

    vertices: tuple[int, ...]
    edges: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "vertices": {str(i): v for i, v in enumerate(self.vertices)},
            "edges": {str(i): e for i, e in enumerate(self.edges)},
        }


@dataclass(frozen=True)
class FramedAut:
    nu: GraphAut
    o: tuple[int, ...]  # one sign per base edge

    def __post_init__(self):
        if any(x not in (1, -1) for x in self.o):
            raise ValueError("o must take values in {+1, -1}")

    def to_dict(self) -> dict:
        return {"nu": self.nu.to_dict(), "o": {str(i): s for i, s in enumerate(self.o)}}


def identity(fg: FramedKRGraph) -> FramedAut:
    nv = len(fg.base.vertices)
    ne = len(fg.all_edge_ids)
    return FramedAut(GraphAut(tuple(range(nv)), tuple(range(ne))), (1,) * len(fg.base.edges))


def _shape(a: FramedAut):
    return len(a.nu.vertices), len(a.nu.edges), len(a.o)


def compose(a1: FramedAut, a2: FramedAut) -> FramedAut:
    if _shape(a1) != _shape(a2):
        raise GraphMismatch("automorphisms of different framed graphs")
    v = tuple(a1.nu.vertices[x] for x in a2.nu.vertices)
    e = tuple(a1.nu.edges[x] for x in a2.nu.edges)
    o = tuple(a1.o[a2.nu.edges[i]] * a2.o[i] for i in range(len(a2.o)))
    return FramedAut(GraphAut(v, e), o)


def inverse(a: FramedAut) -> FramedAut:
    def inv(p):
        out = [0] * len(p)
        for i, x in enumerate(p):
            out[x] = i
        return tuple(out)

    vi, ei = inv(a.nu.vertices), inv(a.nu.edges)
    o = tuple(a.o[ei[i]] for i in range(len(a.o)))
    return FramedAut(GraphAut(vi, ei), o)


def belongs_to(fg: FramedKRGraph, a: FramedAut) -> bool:
    """Check the automorphism conditions directly (used as a test oracle)."""
    g = fg.base
    if _shape(a) != _shape(identity(fg)):
        return False
    nu_v, nu_e = a.nu.vertices, a.nu.edges
    if sorted(nu_v) != list(range(len(nu_v))) or sorted(nu_e) != list(range(len(nu_e))):
        return False
    for v in g.vertices:
        w = g.vertices[nu_v[v.id]]
        if (v.vtype, v.n_z, v.level) != (w.vtype, w.n_z, w.level):
            return False
    nb = len(g.edges)
    for e in g.edges:
        if nu_e[e.id] >= nb:
            return False
        img = g.edges[nu_e[e.id]]
        if (img.lo, img.hi) != (nu_v[e.lo], nu_v[e.hi]):
            return False
    tv = fg.tangent_vertex
    for t, w in tv.items():
        if nu_e[t] not in tv or tv[nu_e[t]] != nu_v[w]:
            return False
    return True


def _signature(fg: FramedKRGraph, v):
    down, up = fg.base.degree(v.id)
    return (v.vtype, v.n_z, v.level, down, up)


def _multiplicity(fg: FramedKRGraph) -> dict:
    mult: dict = {}
    for e in fg.base.edges:
        mult.setdefault((e.lo, e.hi), []).append(e.id)
    return mult


def vertex_maps(fg: FramedKRGraph, budget: int | None = None) -> list[tuple[int, ...]]:
    """All vertex bijections extendable to automorphisms, lexicographically sorted."""
    g = fg.base
    n = len(g.vertices)
    sig = [_signature(fg, v) for v in g.vertices]
    mult = _multiplicity(fg)
    count = {k: len(v) for k, v in mult.items()}
    adj = [set() for _ in range(n)]
    for lo, hi in count:
        adj[lo].add(hi)
        adj[hi].add(lo)
    order = sorted(range(n), key=lambda v: (-len(adj[v]), v))
    by_sig: dict = {}
    for v in range(n):
        by_sig.setdefault(sig[v], []).append(v)
    image = [-1] * n
    used = [False] * n
    out = []

    def consistent(v, w):
        for u in adj[v]:
            iu = image[u]
            if iu < 0:
                continue
            if count.get((v, u), 0) != count.get((w, iu), 0):
                return False
            if count.get((u, v), 0) != count.get((iu, w), 0):
                return False
        return True

    def rec(i):
        if i == n:
            out.append(tuple(image))
            if budget is not None and len(out) > budget:
                raise AutBudget(f"more than {budget} graph automorphisms (raise KRTOOL_MAX_AUT)")
            return
        v = order[i]
        for w in by_sig[sig[v]]:
            if used[w] or not consistent(v, w):
                continue
            image[v] = w
            used[w] = True
            rec(i + 1)
            used[w] = False
            image[v] = -1

    rec(0)
    return sorted(out)


def _edge_factor(fg: FramedKRGraph) -> int:
    m = 1
    for ids in _multiplicity(fg).values():
        m *= factorial(len(ids))
    for ts in fg.tangent.values():
        m *= factorial(len(ts))
    return m


def aut_order(fg: FramedKRGraph) -> tuple[int, int]:
    """(number of graph automorphisms nu, times 2^|E| for the o-component)."""
    budget = max_aut_budget()
    nmaps = len(vertex_maps(fg, budget))
    count = nmaps * _edge_factor(fg)
    if count > budget:
        raise AutBudget(f"{count} graph automorphisms exceed the budget {budget} (raise KRTOOL_MAX_AUT)")
    return count, count * 2 ** len(fg.base.edges)


def enumerate_graph_auts(fg: FramedKRGraph) -> list[GraphAut]:
    budget = max_aut_budget()
    maps = vertex_maps(fg, budget)
    total = len(maps) * _edge_factor(fg)
    if total > budget:
        raise AutBudget(f"{total} graph automorphisms exceed the budget {budget} (raise KRTOOL_MAX_AUT)")
    mult = _multiplicity(fg)
    groups = sorted(mult.items())
    tangents = sorted(fg.tangent.items())
    ne = len(fg.all_edge_ids)
    out = []
    for vm in maps:
        choices = []
        for (lo, hi), ids in groups:
            targets = mult[(vm[lo], vm[hi])]
            choices.append([(ids, p) for p in permutations(targets)])
        for w, ts in tangents:
            targets = fg.tangent[vm[w]]
            choices.append([(ts, p) for p in permutations(targets)])
        for combo in product(*choices):
            edges = [0] * ne
            for src, dst in combo:
                for a, b in zip(src, dst):
                    edges[a] = b
            out.append(GraphAut(vm, tuple(edges)))
    return sorted(out)


def all_framed_auts(fg: FramedKRGraph) -> list[FramedAut]:
    """Every (nu, o); only sensible for tiny graphs."""
    ne = len(fg.base.edges)
    return [FramedAut(nu, o) for nu in enumerate_graph_auts(fg) for o in product((1, -1), repeat=ne)]
