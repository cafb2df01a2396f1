import random
from fractions import Fraction
from itertools import permutations, product

import pytest

from krtool.automorphisms import (
    FramedAut,
    GraphAut,
    aut_order,
    all_framed_auts,
    belongs_to,
    compose,
    enumerate_graph_auts,
    identity,
    inverse,
    vertex_maps,
)
from krtool.errors import AutBudget, GraphMismatch
from krtool.framed import FramedKRGraph, frame
from krtool.local_model import LocalType
from krtool.reeb import KREdge, KRGraph, KRVertex, Leaf

from test_framed import framed

F = Fraction
FRAMED_CORPUS = ["annulus", "disk", "genus2", "klein", "octahedron", "octahedron_n", "rp2", "torus", "torus_n"]
EXPECTED = {
    "octahedron": (1, 2),
    "torus": (2, 32),
    "rp2": (1, 4),
    "klein": (1, 8),
    "genus2": (1, 256),
    "disk": (1, 2),
    "annulus": (2, 32),
    "torus_n": (4, 64),
    "octahedron_n": (48, 96),
}

LEAF = Leaf(0, frozenset())


def graph(vertices, edges):
    """A hand-made KR graph; vertices are (type, level[, n_z])."""
    vs = []
    for i, row in enumerate(vertices):
        vtype, level = row[0], F(row[1])
        local = LocalType("N", "NZ", row[2]) if vtype == "N" else LocalType(vtype) if vtype != "Boundary" else None
        vs.append(KRVertex(i, vtype, level, (i,), None, local))
    es = tuple(KREdge(i, lo, hi, LEAF) for i, (lo, hi) in enumerate(sorted(edges)))
    return frame(KRGraph(tuple(vs), es))


SYNTHETIC = {
    # three maxima at one level over a saddle: S_3
    "tripod": graph([("P", 0), ("S", 1), ("P", 2), ("P", 2), ("P", 2)], [(0, 1), (1, 2), (1, 3), (1, 4)]),
    # triple edge between two saddles
    "triple": graph([("P", 0), ("S", 1), ("S", 2), ("P", 3)], [(0, 1), (1, 2), (1, 2), (1, 2), (2, 3)]),
    # N-points of cyclic order 2 (two tangents each), swapped by a symmetry
    "n_pair": graph([("N", 0, 2), ("N", 0, 2), ("S", 1), ("P", 2)], [(0, 2), (1, 2), (2, 3)]),
    # levels differ, so no symmetry although the shape is symmetric
    "levels": graph([("P", 0), ("P", 1), ("S", 2), ("P", 3)], [(0, 2), (1, 2), (2, 3)]),
    # two saddles at the same level with two maxima each
    "twin": graph(
        [("P", 0), ("S", 1), ("S", 2), ("S", 2), ("P", 3), ("P", 3), ("P", 3), ("P", 3)],
        [(0, 1), (1, 2), (1, 3), (2, 4), (2, 5), (3, 6), (3, 7)],
    ),
}
SYNTHETIC_COUNTS = {"tripod": 6, "triple": 6, "n_pair": 2 * 2 * 2, "levels": 1, "twin": 8}


def all_graphs():
    items = [(n, framed(n)) for n in FRAMED_CORPUS]
    items += sorted(SYNTHETIC.items())
    return items


def brute_force_auts(fg):
    """Every (vertex perm, edge perm) passing belongs_to, with no pruning at all."""
    nv, ne = len(fg.base.vertices), len(fg.all_edge_ids)
    out = []
    for vp in permutations(range(nv)):
        for ep in permutations(range(ne)):
            a = FramedAut(GraphAut(vp, ep), (1,) * len(fg.base.edges))
            if belongs_to(fg, a):
                out.append(a.nu)
    return sorted(out)


def brute_force_vertex_maps(fg):
    """Vertex permutations preserving labels and the edge multiset."""
    g = fg.base
    nv = len(g.vertices)
    edges = sorted((e.lo, e.hi) for e in g.edges)
    ntan = {w: len(ts) for w, ts in fg.tangent.items()}
    out = []
    for vp in permutations(range(nv)):
        if any(
            (v.vtype, v.n_z, v.level) != (g.vertices[vp[v.id]].vtype, g.vertices[vp[v.id]].n_z, g.vertices[vp[v.id]].level)
            for v in g.vertices
        ):
            continue
        if sorted((vp[a], vp[b]) for a, b in edges) != edges:
            continue
        if any(ntan.get(vp[w], 0) != k for w, k in ntan.items()):
            continue
        out.append(vp)
    return out


@pytest.mark.parametrize("name, fg", all_graphs(), ids=[n for n, _ in all_graphs()])
def test_vertex_maps_match_brute_force(name, fg):
    assert len(fg.base.vertices) <= 8
    assert vertex_maps(fg) == brute_force_vertex_maps(fg)


@pytest.mark.parametrize("name, fg", all_graphs(), ids=[n for n, _ in all_graphs()])
def test_enumeration_matches_full_brute_force(name, fg):
    ne = len(fg.all_edge_ids)
    nv = len(fg.base.vertices)
    from math import factorial

    if factorial(nv) * factorial(ne) > 3 * 10**6:
        # too large for the unpruned search: check each enumerated map instead
        auts = enumerate_graph_auts(fg)
        assert len(set(auts)) == len(auts)
        for nu in auts:
            assert belongs_to(fg, FramedAut(nu, (1,) * len(fg.base.edges)))
        return
    assert enumerate_graph_auts(fg) == brute_force_auts(fg)


@pytest.mark.parametrize("name", FRAMED_CORPUS)
def test_corpus_counts(name):
    assert aut_order(framed(name)) == EXPECTED[name]


@pytest.mark.parametrize("name", sorted(SYNTHETIC))
def test_synthetic_counts(name, monkeypatch):
    monkeypatch.setenv("KRTOOL_MAX_AUT", str(10**7))
    fg = SYNTHETIC[name]
    count, total = aut_order(fg)
    assert count == SYNTHETIC_COUNTS[name]
    assert total == count * 2 ** len(fg.base.edges)


def multiplication_table(elements):
    index = {a: i for i, a in enumerate(elements)}
    return [[index[compose(a, b)] for b in elements] for a in elements]


@pytest.mark.parametrize("name", FRAMED_CORPUS)
def test_group_axioms(name):
    fg = framed(name)
    elems = all_framed_auts(fg)
    assert len(elems) == aut_order(fg)[1]
    for a in elems:
        assert belongs_to(fg, a)
    T = multiplication_table(elems)  # KeyError here would mean the set is not closed
    e = elems.index(identity(fg))
    n = len(elems)
    for i in range(n):
        assert T[e][i] == i == T[i][e]
        j = elems.index(inverse(elems[i]))
        assert T[i][j] == e == T[j][i]
    # associativity on all triples
    for i in range(n):
        Ti = T[i]
        for j in range(n):
            Tij = T[Ti[j]]
            Tj = T[j]
            assert all(Tij[k] == Ti[Tj[k]] for k in range(n))


def act(a, edge, sign):
    """(nu, o) acting on a signed base edge."""
    return a.nu.edges[edge], a.o[edge] * sign


@pytest.mark.parametrize("name", ["torus", "genus2", "torus_n", "octahedron_n", "annulus"])
def test_composition_formula_random_pairs(name):
    fg = framed(name)
    elems = all_framed_auts(fg)
    rng = random.Random(2024)
    nb = len(fg.base.edges)
    for _ in range(100):
        a1, a2 = rng.choice(elems), rng.choice(elems)
        c = compose(a1, a2)
        for v in range(len(fg.base.vertices)):
            assert c.nu.vertices[v] == a1.nu.vertices[a2.nu.vertices[v]]
        for e in fg.all_edge_ids:
            assert c.nu.edges[e] == a1.nu.edges[a2.nu.edges[e]]
        for e in range(nb):
            assert c.o[e] == a1.o[a2.nu.edges[e]] * a2.o[e]
            for s in (1, -1):
                assert act(c, e, s) == act(a1, *act(a2, e, s))


def test_inverse_formula():
    fg = framed("torus")
    for a in all_framed_auts(fg):
        b = inverse(a)
        for e in range(len(fg.base.edges)):
            assert b.o[e] == a.o[b.nu.edges[e]]


def test_shape_mismatch():
    a = identity(framed("torus"))
    b = identity(framed("rp2"))
    with pytest.raises(GraphMismatch):
        compose(a, b)


def test_sign_values():
    with pytest.raises(ValueError):
        FramedAut(GraphAut((0,), ()), (2,))


def test_budget(monkeypatch):
    monkeypatch.setenv("KRTOOL_MAX_AUT", "5")
    with pytest.raises(AutBudget):
        aut_order(SYNTHETIC["tripod"])
    monkeypatch.setenv("KRTOOL_MAX_AUT", "6")
    assert aut_order(SYNTHETIC["tripod"])[0] == 6
    # order-3 N-points carry six tangents each: 2 * 6! * 6! maps
    big = graph([("N", 0, 3), ("N", 0, 3), ("S", 1), ("P", 2)], [(0, 2), (1, 2), (2, 3)])
    monkeypatch.delenv("KRTOOL_MAX_AUT")
    with pytest.raises(AutBudget):
        enumerate_graph_auts(big)
    monkeypatch.setenv("KRTOOL_MAX_AUT", str(2 * 720 * 720))
    assert aut_order(big)[0] == 2 * 720 * 720


def test_o_component_is_free():
    fg = framed("rp2")
    signs = {a.o for a in all_framed_auts(fg)}
    assert signs == set(product((1, -1), repeat=2))


def test_belongs_to_rejects():
    fg = framed("torus")
    bad = FramedAut(GraphAut((3, 1, 2, 0), (3, 1, 2, 0)), (1, 1, 1, 1))
    assert not belongs_to(fg, bad)
    assert isinstance(fg, FramedKRGraph)
