"""Triangulated compact surfaces: parsing, validation and topological invariants.

Mesh file format (UTF-8 text, ``#`` lines are comments)::

    V F
    x y z        # V vertex lines, coordinates are ignored; '-' is allowed
    ...
    i j k        # F triangle lines, 0-based vertex ids
    ...
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

from ._unionfind import UnionFind
from .errors import Disconnected, NotManifold, ParseError

Edge = tuple[int, int]


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True, eq=False)
class TriSurface:
    """A validated triangulated compact connected surface, possibly with boundary.

    Construct through :func:`build_surface` or :func:`load_mesh`; the derived
    fields are filled in there and never change afterwards.
    """

    vertex_count: int
    triangles: tuple[tuple[int, int, int], ...]
    edges: tuple[Edge, ...] = field(repr=False)
    edge_index: dict = field(repr=False)
    edge_faces: tuple[tuple[int, ...], ...] = field(repr=False)
    links: tuple[tuple[int, ...], ...] = field(repr=False)
    boundary_loops: tuple[tuple[int, ...], ...] = ()

    @cached_property
    def boundary_vertices(self) -> frozenset:
        return frozenset(v for loop in self.boundary_loops for v in loop)

    @cached_property
    def boundary_edges(self) -> frozenset:
        return frozenset(e for e, faces in zip(self.edges, self.edge_faces) if len(faces) == 1)

    @cached_property
    def loop_of_vertex(self) -> dict:
        return {v: i for i, loop in enumerate(self.boundary_loops) for v in loop}

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(sorted(link)) for link in self.links)

    @cached_property
    def vertex_triangles(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for t, tri in enumerate(self.triangles):
            for v in tri:
                out[v].append(t)
        return tuple(tuple(ts) for ts in out)

    def is_interior(self, v: int) -> bool:
        return v not in self.boundary_vertices

    @cached_property
    def orientation(self):
        """Coherently oriented triangles, or ``None`` if the surface is non-orientable."""
        return _orient(self)


def _link_order(v: int, link_edges: list[Edge]) -> tuple[tuple[int, ...], bool]:
    """Order the link of ``v``; return (vertices, is_cycle) or raise NotManifold."""
    adj: dict[int, list[int]] = {}
    for a, b in link_edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    degrees = {u: len(ns) for u, ns in adj.items()}
    if any(d > 2 for d in degrees.values()):
        raise NotManifold(f"vertex {v} is pinched (link has a branch point)")
    ends = sorted(u for u, d in degrees.items() if d == 1)
    if ends and len(ends) != 2:
        raise NotManifold(f"vertex {v} is pinched (link has several pieces)")
    start = ends[0] if ends else min(adj)
    order = [start]
    prev = None
    cur = start
    while True:
        nxt = [u for u in sorted(adj[cur]) if u != prev]
        if not ends and len(order) > 1:
            nxt = [u for u in nxt if u != order[0]] or nxt
        if not nxt:
            break
        step = nxt[0]
        if step == start:
            break
        if step in order:
            break
        prev, cur = cur, step
        order.append(cur)
    if len(order) != len(adj):
        raise NotManifold(f"vertex {v} is pinched (link is not connected)")
    return tuple(order), not ends


def build_surface(vertex_count: int, triangles) -> TriSurface:
    """Validate a triangle list and return the derived :class:`TriSurface`."""
    tris = tuple(tuple(int(x) for x in t) for t in triangles)
    if vertex_count <= 0:
        raise ParseError("vertex count must be positive")
    if len(tris) < 2:
        raise NotManifold("a surface needs at least two triangles")
    seen_sets = set()
    for t in tris:
        if len(t) != 3:
            raise ParseError(f"triangle {t} does not have three vertices")
        for v in t:
            if not 0 <= v < vertex_count:
                raise ParseError(f"vertex id {v} out of range 0..{vertex_count - 1}")
        if len(set(t)) != 3:
            raise NotManifold(f"degenerate triangle {t}")
        key = frozenset(t)
        if key in seen_sets:
            raise NotManifold(f"duplicate triangle {t}")
        seen_sets.add(key)

    faces_of: dict[Edge, list[int]] = {}
    for i, (a, b, c) in enumerate(tris):
        for u, v in ((a, b), (b, c), (c, a)):
            faces_of.setdefault(edge_key(u, v), []).append(i)
    for e, fs in faces_of.items():
        if len(fs) > 2:
            raise NotManifold(f"edge {e} lies in {len(fs)} triangles")
    edges = tuple(sorted(faces_of))
    edge_index = {e: i for i, e in enumerate(edges)}
    edge_faces = tuple(tuple(faces_of[e]) for e in edges)

    link_edges: list[list[Edge]] = [[] for _ in range(vertex_count)]
    for a, b, c in tris:
        link_edges[a].append((b, c))
        link_edges[b].append((c, a))
        link_edges[c].append((a, b))
    links = []
    boundary_adj: dict[int, list[int]] = {}
    for v in range(vertex_count):
        if not link_edges[v]:
            raise NotManifold(f"vertex {v} belongs to no triangle")
        order, is_cycle = _link_order(v, link_edges[v])
        links.append(order)
        if not is_cycle:
            boundary_adj[v] = [order[0], order[-1]]

    uf = UnionFind(range(vertex_count))
    for a, b, c in tris:
        uf.union(a, b)
        uf.union(a, c)
    if len({uf.find(v) for v in range(vertex_count)}) != 1:
        raise Disconnected("the surface has more than one connected component")

    loops = []
    visited = set()
    for start in sorted(boundary_adj):
        if start in visited:
            continue
        loop = [start]
        visited.add(start)
        prev, cur = None, start
        cur_next = min(boundary_adj[start])
        while cur_next != start:
            prev, cur = cur, cur_next
            loop.append(cur)
            visited.add(cur)
            a, b = boundary_adj[cur]
            cur_next = b if a == prev else a
        loops.append(tuple(loop))

    return TriSurface(
        vertex_count=vertex_count,
        triangles=tris,
        edges=edges,
        edge_index=edge_index,
        edge_faces=edge_faces,
        links=tuple(links),
        boundary_loops=tuple(loops),
    )


def load_mesh(text: str) -> TriSurface:
    """Parse mesh-file text and return a validated surface."""
    lines = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        lines.append(line)
    if not lines:
        raise ParseError("empty mesh file")
    head = lines[0].split()
    try:
        nv, nf = (int(x) for x in head)
    except ValueError:
        raise ParseError(f"bad header line {lines[0]!r}, expected 'V F'") from None
    if nv <= 0 or nf < 0:
        raise ParseError("header counts must be positive")
    if len(lines) != 1 + nv + nf:
        raise ParseError(f"expected {nv} vertex and {nf} triangle lines, got {len(lines) - 1} lines")
    for line in lines[1 : 1 + nv]:
        if line == "-":
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(f"bad vertex line {line!r}")
        try:
            [float(p) for p in parts]
        except ValueError:
            raise ParseError(f"bad vertex line {line!r}") from None
    tris = []
    for line in lines[1 + nv :]:
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(f"bad triangle line {line!r}")
        try:
            tris.append(tuple(int(p) for p in parts))
        except ValueError:
            raise ParseError(f"bad triangle line {line!r}") from None
    return build_surface(nv, tris)


def dump_mesh(s: TriSurface, coords=None) -> str:
    """Serialize a surface back to the mesh-file format."""
    out = [f"{s.vertex_count} {len(s.triangles)}"]
    for v in range(s.vertex_count):
        if coords is None:
            out.append("-")
        else:
            out.append(" ".join(f"{c:g}" for c in coords[v]))
    out.extend(f"{a} {b} {c}" for a, b, c in s.triangles)
    return "\n".join(out) + "\n"


def _orient(s: TriSurface):
    """Propagate an orientation over the dual graph by BFS."""
    oriented: list = [None] * len(s.triangles)
    count = 0
    for seed in range(len(s.triangles)):
        if oriented[seed] is not None:
            continue
        oriented[seed] = s.triangles[seed]
        queue = deque([seed])
        while queue:
            t = queue.popleft()
            count += 1
            a, b, c = oriented[t]
            for u, v in ((a, b), (b, c), (c, a)):
                for nb in s.edge_faces[s.edge_index[edge_key(u, v)]]:
                    if nb == t:
                        continue
                    (w,) = set(s.triangles[nb]) - {u, v}
                    want = (v, u, w)
                    if oriented[nb] is None:
                        oriented[nb] = want
                        queue.append(nb)
                    elif not _same_cycle(oriented[nb], want):
                        return None
    assert count == len(s.triangles)
    return tuple(oriented)


def _same_cycle(t1, t2) -> bool:
    i = t1.index(t2[0])
    return t1[(i + 1) % 3] == t2[1]


@dataclass(frozen=True)
class SurfaceInvariants:
    euler_char: int
    orientable: bool
    boundary_count: int
    genus: int

    def to_dict(self) -> dict:
        return {
            "euler_char": self.euler_char,
            "orientable": self.orientable,
            "boundary_count": self.boundary_count,
            "genus": self.genus,
        }

    @property
    def name(self) -> str:
        """Classical name of the surface (used by the pi_1 table)."""
        g, b = self.genus, self.boundary_count
        if self.orientable:
            base = {0: "sphere", 1: "torus"}.get(g, f"orientable genus {g}")
            if g == 0 and b == 1:
                return "disk"
            if g == 0 and b == 2:
                return "annulus"
        else:
            base = {1: "projective plane", 2: "Klein bottle"}.get(g, f"non-orientable genus {g}")
            if g == 1 and b == 1:
                return "Moebius band"
        return base if b == 0 else f"{base} with {b} boundary components"


def invariants(s: TriSurface) -> SurfaceInvariants:
    """Euler characteristic, orientability, boundary count and genus."""
    chi = s.vertex_count - len(s.edges) + len(s.triangles)
    orientable = s.orientation is not None
    b = len(s.boundary_loops)
    if orientable:
        two_g = 2 - chi - b
        assert two_g >= 0 and two_g % 2 == 0
        genus = two_g // 2
    else:
        genus = 2 - chi - b
        assert genus >= 1
    return SurfaceInvariants(chi, orientable, b, genus)
