"""First homology relative to a finite vertex set and the action of Dehn twists.

Chains live on the mesh: edges are oriented from the smaller to the larger
vertex id, triangles by the global orientation.  A twist along a regular leaf
gamma acts by x -> x + <x, gamma> [gamma], where <x, gamma> counts signed
crossings of the edges of x with gamma.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import snf
from .errors import CurveThroughSigma, NonOrientable
from .mesh import TriSurface, edge_key
from .reeb import KRGraph, Leaf


@dataclass(frozen=True, eq=False)
class RelHomology:
    rank: int
    torsion: tuple[int, ...]
    basis: tuple[tuple[int, ...], ...]  # free generators as integer edge chains
    sigma: frozenset = frozenset()
    _Qinv: list = field(default=None, repr=False)
    _r1: int = field(default=0, repr=False)
    _Pc: list = field(default=None, repr=False)
    _rc: int = field(default=0, repr=False)

    def coordinates(self, chain) -> list[int]:
        """Coordinates of a relative cycle in the free basis."""
        y = snf.matvec(self._Qinv, list(chain))[self._r1 :]
        return snf.matvec(self._Pc, y)[self._rc :] if self._Pc else list(y)

    def to_dict(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}


def boundary_matrices(s: TriSurface, sigma=frozenset()):
    """Reduced boundary maps d1 (rows: vertices outside sigma) and d2."""
    oriented = s.orientation
    if oriented is None:
        raise NonOrientable("the surface is non-orientable")
    rows = [v for v in range(s.vertex_count) if v not in sigma]
    row_of = {v: i for i, v in enumerate(rows)}
    ne = len(s.edges)
    d1 = [[0] * ne for _ in rows]
    for j, (u, v) in enumerate(s.edges):
        if v in row_of:
            d1[row_of[v]][j] += 1
        if u in row_of:
            d1[row_of[u]][j] -= 1
    d2 = [[0] * len(oriented) for _ in range(ne)]
    for t, (a, b, c) in enumerate(oriented):
        for x, y in ((a, b), (b, c), (c, a)):
            j = s.edge_index[edge_key(x, y)]
            d2[j][t] += 1 if x < y else -1
    return d1, d2, rows


def rel_homology(s: TriSurface, sigma=()) -> RelHomology:
    sigma = frozenset(sigma)
    d1, d2, rows = boundary_matrices(s, sigma)
    ne, nf = len(s.edges), len(s.triangles)
    if rows:
        B = snf.smith(d1, len(rows), ne)
        r1, Q, Qinv = B.rank, B.Q, B.Qinv
    else:
        r1, Q, Qinv = 0, snf.identity(ne), snf.identity(ne)
    kdim = ne - r1
    K = [row[r1:] for row in Q]  # E x kdim, columns span ker d1
    Y = snf.matmul(Qinv, d2)
    assert all(x == 0 for row in Y[:r1] for x in row), "boundary of a triangle is not a cycle"
    C = Y[r1:]
    if kdim and nf:
        Cs = snf.smith(C, kdim, nf)
        rc, diag, Pc, Pc_inv = Cs.rank, Cs.diag, Cs.P, Cs.Pinv
    else:
        rc, diag, Pc, Pc_inv = 0, [], snf.identity(kdim), snf.identity(kdim)
    torsion = tuple(d for d in diag if d > 1)
    basis = []
    for j in range(rc, kdim):
        col = [Pc_inv[i][j] for i in range(kdim)]
        basis.append(tuple(snf.matvec(K, col)))
    return RelHomology(kdim - rc, torsion, tuple(basis), sigma, Qinv, r1, Pc, rc)


@dataclass(frozen=True)
class LevelCurve:
    """A leaf traversed with higher values on its left.

    ``crossings`` lists ``(edge, sign)`` in travel order; sign is +1 when the
    edge, oriented small id -> large id, runs from below to above the leaf.
    ``chain`` is the pushoff of the curve onto the vertices just below it.
    """

    crossings: tuple
    chain: tuple[int, ...]

    def to_dict(self) -> dict:
        return {"crossings": [[list(e), sgn] for e, sgn in self.crossings]}


def trace_leaf(s: TriSurface, rank, leaf: Leaf) -> LevelCurve:
    oriented = s.orientation
    if oriented is None:
        raise NonOrientable("the surface is non-orientable")
    p = leaf.rank
    below = lambda v: rank[v] <= p
    step = {}
    for tri in oriented:
        sides = [below(v) for v in tri]
        if all(sides) or not any(sides):
            continue
        k = next(i for i in range(3) if sides.count(sides[i]) == 1)
        x, y, z = tri[k], tri[(k + 1) % 3], tri[(k + 2) % 3]
        exy, exz = edge_key(x, y), edge_key(x, z)
        if exy not in leaf.edges:
            continue
        if not below(x):
            step[exy] = exz
        else:
            step[exz] = exy
    start = min(leaf.edges)
    seq = [start]
    cur = step.get(start)
    while cur is not None and cur != start:
        seq.append(cur)
        cur = step.get(cur)
        if len(seq) > len(leaf.edges):
            break
    if cur != start or len(seq) != len(leaf.edges):
        raise CurveThroughSigma("leaf edges do not form one closed level curve")
    crossings = []
    for e in seq:
        crossings.append((e, 1 if below(e[0]) else -1))
    low = lambda e: e[0] if below(e[0]) else e[1]
    chain = [0] * len(s.edges)
    m = len(seq)
    for i in range(m):
        a, b = low(seq[i]), low(seq[(i + 1) % m])
        if a != b:
            j = s.edge_index[edge_key(a, b)]
            chain[j] += 1 if a < b else -1
    return LevelCurve(tuple(crossings), tuple(chain))


def intersection(chain, curve: LevelCurve, s: TriSurface) -> int:
    return sum(chain[s.edge_index[e]] * sgn for e, sgn in curve.crossings)


def twist_matrix(s: TriSurface, H: RelHomology, curve: LevelCurve) -> list[list[int]]:
    """Matrix of x -> x + <x, gamma> gamma on the free basis of H (columns = images)."""
    n = H.rank
    c = H.coordinates(curve.chain)
    w = [intersection(b, curve, s) for b in H.basis]
    return [[int(i == j) + c[i] * w[j] for j in range(n)] for i in range(n)]


def l_estimate(matrices) -> int:
    """Rank of the kernel of m -> sum m_i (T_i - I)."""
    mats = list(matrices)
    if not mats:
        return 0
    n = len(mats[0])
    if n == 0:
        return len(mats)
    rows = []
    for i in range(n):
        for j in range(n):
            rows.append([T[i][j] - int(i == j) for T in mats])
    return snf.kernel_rank(rows, len(mats))


@dataclass(frozen=True)
class TwistData:
    edge: int
    kind: str  # SEdge | NEdge
    rel_matrix: tuple
    abs_matrix: tuple
    curve: LevelCurve

    def to_dict(self) -> dict:
        return {
            "edge": self.edge,
            "kind": self.kind,
            "matrix": [list(r) for r in self.rel_matrix],
            "abs_matrix": [list(r) for r in self.abs_matrix],
        }


@dataclass(frozen=True)
class HomologyAction:
    h1_rel: RelHomology
    h1_abs: RelHomology
    twists: tuple[TwistData, ...]
    k: int

    @property
    def rel_kernel_rank(self) -> int:
        """Kernel of the S-edge twists acting on H1(M, Sigma)."""
        mats = [t.rel_matrix for t in self.twists if t.kind == "SEdge"]
        return l_estimate(mats)

    @property
    def l_estimate(self) -> int:
        """Kernel of all internal twists acting on the absolute H1(M)."""
        return l_estimate([t.abs_matrix for t in self.twists])

    def to_dict(self) -> dict:
        return {
            "h1": self.h1_rel.to_dict(),
            "h1_abs": self.h1_abs.to_dict(),
            "twists": [t.to_dict() for t in self.twists],
            "l_estimate": self.l_estimate,
            "rel_kernel_rank": self.rel_kernel_rank,
            "k": self.k,
        }


def homology_action(s: TriSurface, g: KRGraph, edge_class, criticals) -> HomologyAction:
    sigma = frozenset(c.vertex_id for c in criticals)
    H = rel_homology(s, sigma)
    Ha = rel_homology(s, ())
    twists = []
    for eid in edge_class.internal:
        e = g.edges[eid]
        curve = trace_leaf(s, g.event_rank, e.leaf)
        Tr = twist_matrix(s, H, curve)
        Ta = twist_matrix(s, Ha, curve)
        twists.append(
            TwistData(eid, edge_class.base[eid], tuple(map(tuple, Tr)), tuple(map(tuple, Ta)), curve)
        )
    return HomologyAction(H, Ha, tuple(twists), edge_class.k)
