import pytest
import sympy

from krtool import snf
from krtool.critical import detect_critical
from krtool.errors import NonOrientable
from krtool.framed import classify_edges, frame
from krtool.homology import boundary_matrices, homology_action, intersection, rel_homology, trace_leaf
from krtool.mesh import invariants
from krtool.reeb import build_kr_graph

from test_framed import framed
from krtool.annotations import load_annotations
from krtool.corpus import ANNOTATED, build

ORIENTABLE = ["annulus", "disk", "genus2", "octahedron", "torus", "torus_n"]


def pipeline(name):
    if name in ANNOTATED:
        mesh, text = ANNOTATED[name]
        s, f = build(mesh)
        ann = load_annotations(text, s.vertex_count)
    else:
        s, f = build(name)
        ann = None
    crit = detect_critical(s, f)
    g = build_kr_graph(s, f, crit, ann)
    ec = classify_edges(frame(g))
    return s, g, ec, crit, homology_action(s, g, ec, crit)


def rank_oracle(s, sigma):
    d1, d2, rows = boundary_matrices(s, frozenset(sigma))
    r1 = sympy.Matrix(d1).rank() if rows else 0
    r2 = sympy.Matrix(d2).rank()
    return len(s.edges) - r1 - r2


@pytest.mark.parametrize("name", ["annulus", "disk", "genus2", "octahedron", "torus"])
def test_absolute_ranks(name):
    s, _ = build(name)
    inv = invariants(s)
    H = rel_homology(s)
    expected = 2 * inv.genus + max(inv.boundary_count - 1, 0)
    assert H.rank == expected == rank_oracle(s, ())
    assert H.torsion == ()


@pytest.mark.parametrize("name", ["annulus", "disk", "genus2", "octahedron", "torus"])
def test_relative_ranks(name):
    s, f = build(name)
    sigma = [c.vertex_id for c in detect_critical(s, f)]
    H = rel_homology(s, sigma)
    inv = invariants(s)
    expected = 2 * inv.genus + max(inv.boundary_count - 1, 0) + len(sigma) - 1
    assert H.rank == expected == rank_oracle(s, sigma)


def test_basis_are_cycles():
    s, _ = build("genus2")
    H = rel_homology(s)
    d1, _, _ = boundary_matrices(s)
    for b in H.basis:
        assert all(x == 0 for x in snf.matvec(d1, list(b)))
    # the basis is independent: its coordinates form the identity
    for i, b in enumerate(H.basis):
        assert H.coordinates(b) == [int(i == j) for j in range(H.rank)]


def test_non_orientable_rejected():
    s, _ = build("rp2")
    with pytest.raises(NonOrientable):
        rel_homology(s)


@pytest.mark.parametrize("name", ["torus", "genus2", "torus_n"])
def test_level_curves(name):
    s, g, ec, _, ha = pipeline(name)
    d1, _, _ = boundary_matrices(s)
    for t in ha.twists:
        leaf = g.edges[t.edge].leaf
        curve = trace_leaf(s, g.event_rank, leaf)
        assert sorted(e for e, _ in curve.crossings) == sorted(leaf.edges)
        assert all(x == 0 for x in snf.matvec(d1, list(curve.chain)))
        # a level curve pushed off itself does not meet it
        assert intersection(curve.chain, curve, s) == 0


def test_torus_curve_meets_meridian_once():
    s, g, ec, _, ha = pipeline("torus")
    H = rel_homology(s)
    curve = trace_leaf(s, g.event_rank, g.edges[ec.internal[0]].leaf)
    values = sorted(abs(intersection(b, curve, s)) for b in H.basis)
    assert values == [0, 1]


def det_minus_identity_squared(T):
    n = len(T)
    N = [[T[i][j] - int(i == j) for j in range(n)] for i in range(n)]
    return snf.det(T), snf.matmul(N, N) if n else []


@pytest.mark.parametrize("name", ORIENTABLE)
def test_twist_matrices_unipotent(name):
    *_, ha = pipeline(name)
    for t in ha.twists:
        for T in (t.rel_matrix, t.abs_matrix):
            d, N2 = det_minus_identity_squared([list(r) for r in T])
            assert d == 1
            assert all(x == 0 for row in N2 for x in row)


@pytest.mark.parametrize("name", ["torus", "genus2", "torus_n"])
def test_twist_fixes_its_curve(name):
    s, g, _, _, ha = pipeline(name)
    for t in ha.twists:
        c = ha.h1_abs.coordinates(t.curve.chain)
        Tc = snf.matvec([list(r) for r in t.abs_matrix], c)
        assert Tc == c


@pytest.mark.parametrize("name, l_est, rel", [("torus", 1, 0), ("genus2", 2, None), ("torus_n", 2, None)])
def test_l_estimate(name, l_est, rel):
    *_, ha = pipeline(name)
    assert ha.l_estimate == l_est
    assert ha.k >= ha.l_estimate
    if rel is not None:
        assert ha.rel_kernel_rank == rel


def test_torus_twin_curves_are_parallel():
    # the two internal edges of the torus sweep parallel circles: same absolute twist
    *_, ha = pipeline("torus")
    a, b = ha.twists
    assert a.abs_matrix == b.abs_matrix
    assert a.abs_matrix != tuple(tuple(int(i == j) for j in range(2)) for i in range(2))


def test_to_dict():
    *_, ha = pipeline("torus")
    d = ha.to_dict()
    assert d["h1"]["rank"] == 5 and d["h1_abs"]["rank"] == 2
    assert d["k"] == 2 and d["l_estimate"] == 1
    assert [t["kind"] for t in d["twists"]] == ["SEdge", "SEdge"]
