"""Kronrod-Reeb graph of a PL function by an upward sweep over level curves.

The sweep visits *events* in increasing tie-broken order: every interior
vertex is an event, and every boundary loop (constant by AxBd) is a single
event.  Between events the level set is a disjoint union of closed curves,
each recorded as the set of mesh edges it crosses.  Each curve component
carries an arc label; an arc runs from the event that created it to the event
that consumes it.  Contracting the arcs through regular vertices gives the
KR edges.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from ._unionfind import UnionFind
from .annotations import Annotation, as_annotations
from .critical import CriticalVertex, PLFunction, check_axbd, detect_critical, level_components
from .errors import AnnotationMissing, AxSPNViolation
from .local_model import LocalType, factor_profile
from .mesh import TriSurface, edge_key


@dataclass(frozen=True)
class Leaf:
    """A regular level curve: the mesh edges crossed at a threshold between events.

    An edge (u, w) is crossed iff exactly one endpoint has event rank <= rank.
    """

    rank: int
    edges: frozenset

    def sorted_edges(self):
        return sorted(self.edges)


@dataclass(frozen=True)
class KRVertex:
    id: int
    vtype: str  # Boundary | S | P | N
    level: Fraction
    preimage: tuple[int, ...]  # critical vertex ids, or boundary loop vertices
    loop: int | None = None  # boundary loop index for Boundary vertices
    local: LocalType | None = None

    @property
    def n_z(self):
        return self.local.n_z if self.local is not None and self.vtype == "N" else None

    @property
    def subtype(self):
        return self.local.subtype if self.local is not None and self.vtype == "N" else None

    @property
    def label(self) -> str:
        if self.vtype == "N" and self.subtype:
            return self.subtype
        return self.vtype

    def to_dict(self) -> dict:
        d = {
            "id": self.id,
            "type": self.vtype,
            "level": str(self.level),
            "preimage": list(self.preimage),
        }
        if self.vtype == "N":
            d["n_z"] = self.n_z
            d["subtype"] = self.subtype
        if self.loop is not None:
            d["loop"] = self.loop
        return d


@dataclass(frozen=True)
class KREdge:
    id: int
    lo: int
    hi: int
    leaf: Leaf = field(repr=False, compare=False)


@dataclass(frozen=True, eq=False)
class KRGraph:
    vertices: tuple[KRVertex, ...]
    edges: tuple[KREdge, ...]
    event_rank: tuple[int, ...] = field(repr=False, default=())

    @property
    def kr_values(self) -> dict[int, Fraction]:
        return {v.id: v.level for v in self.vertices}

    def degree(self, v: int) -> tuple[int, int]:
        down = sum(1 for e in self.edges if e.hi == v)
        up = sum(1 for e in self.edges if e.lo == v)
        return down, up

    def first_betti(self) -> int:
        uf = UnionFind(range(len(self.vertices)))
        for e in self.edges:
            uf.union(e.lo, e.hi)
        comps = len({uf.find(v.id) for v in self.vertices})
        return len(self.edges) - len(self.vertices) + comps

    def is_connected(self) -> bool:
        uf = UnionFind(range(len(self.vertices)))
        for e in self.edges:
            uf.union(e.lo, e.hi)
        return len({uf.find(v.id) for v in self.vertices}) == 1

    def type_counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for v in self.vertices:
            out[v.label] = out.get(v.label, 0) + 1
        return out

    def to_dict(self) -> dict:
        return {
            "vertices": [v.to_dict() for v in self.vertices],
            "edges": [[e.lo, e.hi] for e in self.edges],
        }


def event_ranks(s: TriSurface, f: PLFunction) -> tuple[tuple[int, ...], list]:
    """Rank of the event each vertex belongs to, and the sorted event list.

    Events are ``("v", vertex)`` or ``("loop", index)``.
    """
    events = []
    for v in range(s.vertex_count):
        if s.is_interior(v):
            events.append(((f.values[v], v), ("v", v)))
    for i, loop in enumerate(s.boundary_loops):
        events.append(((f.values[loop[0]], min(loop)), ("loop", i)))
    events.sort()
    rank = [0] * s.vertex_count
    for r, (_, ev) in enumerate(events):
        if ev[0] == "v":
            rank[ev[1]] = r
        else:
            for v in s.boundary_loops[ev[1]]:
                rank[v] = r
    return tuple(rank), [ev for _, ev in events]


def _event_vertices(s: TriSurface, ev):
    return (ev[1],) if ev[0] == "v" else s.boundary_loops[ev[1]]


@dataclass
class _Arc:
    label: int
    start: int  # event rank
    end: int | None
    leaf: Leaf


def sweep(s: TriSurface, f: PLFunction):
    """Run the level sweep; return (ranks, events, arcs)."""
    rank, events = event_ranks(s, f)
    tri_edges = [
        (edge_key(a, b), edge_key(b, c), edge_key(c, a)) for a, b, c in s.triangles
    ]
    faces_of = {e: s.edge_faces[i] for i, e in enumerate(s.edges)}
    label_of: dict = {}
    arcs: list[_Arc] = []

    for p, ev in enumerate(events):
        verts = set(_event_vertices(s, ev))
        down, up = [], []
        for v in sorted(verts):
            for u in s.neighbors[v]:
                if u in verts:
                    continue
                (down if rank[u] < p else up).append(edge_key(u, v))
        incoming = set()
        for e in down:
            lab = label_of.pop(e)
            incoming.add(lab)
        for lab in incoming:
            arcs[lab].end = p
        for e in up:
            label_of[e] = None

        def crossing(e):
            return min(rank[e[0]], rank[e[1]]) <= p < max(rank[e[0]], rank[e[1]])

        seeds = sorted(set(up) | {e for e, lab in label_of.items() if lab in incoming})
        for seed in seeds:
            if label_of[seed] is not None and label_of[seed] not in incoming:
                continue
            new = len(arcs)
            comp = {seed}
            label_of[seed] = new
            queue = deque([seed])
            while queue:
                e = queue.popleft()
                for t in faces_of[e]:
                    for e2 in tri_edges[t]:
                        if e2 != e and e2 not in comp and crossing(e2):
                            old = label_of.get(e2, "absent")
                            assert old is None or old in incoming, "sweep reached an unrelated level curve"
                            comp.add(e2)
                            label_of[e2] = new
                            queue.append(e2)
            arcs.append(_Arc(new, p, None, Leaf(p, frozenset(comp))))
    assert not label_of, "level curves left open above the last event"
    return rank, events, arcs


def _default_type(kind: str) -> LocalType:
    return LocalType("S") if kind == "Saddle" else LocalType("P")


def resolve_local_type(c: CriticalVertex, ann: Annotation | None) -> LocalType:
    """Type of one critical vertex from its link data and optional annotation."""
    if ann is None or not ann.has_model:
        if ann is not None and ann.degenerate and c.is_extreme:
            raise AnnotationMissing(f"degenerate extreme at vertex {c.vertex_id} has no local model")
        return _default_type(c.kind)
    lt = ann.local_type
    if c.kind == "Saddle":
        if lt.tag != "S":
            raise AxSPNViolation(f"vertex {c.vertex_id} is a saddle but is annotated {lt.label}")
        if ann.poly is not None:
            a = factor_profile(ann.poly).a
            if a != c.n:
                raise AxSPNViolation(
                    f"vertex {c.vertex_id}: local model has {a} real linear factors, the link has {c.n} lower arcs"
                )
    elif lt.tag == "S":
        raise AxSPNViolation(f"vertex {c.vertex_id} is a local {c.kind.lower()} but is annotated S")
    return lt


def build_kr_graph(s: TriSurface, f: PLFunction, criticals=None, annotations=None) -> KRGraph:
    check_axbd(s, f)
    if criticals is None:
        criticals = detect_critical(s, f)
    anns = as_annotations(annotations)
    crit_by_v = {c.vertex_id: c for c in criticals}
    for v in anns:
        if v not in crit_by_v:
            raise AxSPNViolation(f"vertex {v} is annotated but is not a critical vertex")
    local = {v: resolve_local_type(c, anns.get(v)) for v, c in crit_by_v.items()}

    rank, events, arcs = sweep(s, f)

    # graph on events: keep critical vertices and boundary loops
    node_of_event = {}
    for p, ev in enumerate(events):
        if ev[0] == "loop" or ev[1] in crit_by_v:
            node_of_event[p] = p

    # merge saddles of equal value lying on one level component
    uf = UnionFind(node_of_event)
    saddles_by_value: dict = {}
    for c in criticals:
        if c.kind == "Saddle":
            saddles_by_value.setdefault(f.values[c.vertex_id], []).append(c.vertex_id)
    for value, vs in saddles_by_value.items():
        if len(vs) < 2:
            continue
        lc = level_components(s, f, value)
        groups: dict = {}
        for v in vs:
            groups.setdefault(lc.find(v), []).append(v)
        for members in groups.values():
            for v in members[1:]:
                uf.union(rank[members[0]], rank[v])

    # contract chains through regular vertices
    in_arcs: dict[int, list[int]] = {}
    out_arcs: dict[int, list[int]] = {}
    for a in arcs:
        out_arcs.setdefault(a.start, []).append(a.label)
        in_arcs.setdefault(a.end, []).append(a.label)
    chains = []
    for a in arcs:
        if a.start not in node_of_event:
            continue
        chain = [a.label]
        cur = a
        while cur.end not in node_of_event:
            (nxt,) = out_arcs[cur.end]
            assert len(in_arcs[cur.end]) == 1
            cur = arcs[nxt]
            chain.append(cur.label)
        chains.append((a.start, cur.end, chain))

    groups = uf.groups()
    group_key = []
    for members in groups:
        keys = []
        for p in members:
            ev = events[p]
            if ev[0] == "v":
                keys.append((f.values[ev[1]], ev[1]))
            else:
                loop = s.boundary_loops[ev[1]]
                keys.append((f.values[loop[0]], min(loop)))
        group_key.append((min(keys), members))
    group_key.sort()
    kr_id = {}
    vertices = []
    for new_id, (_, members) in enumerate(group_key):
        for p in members:
            kr_id[p] = new_id
        first = events[members[0]]
        if first[0] == "loop":
            loop = s.boundary_loops[first[1]]
            vertices.append(KRVertex(new_id, "Boundary", f.values[loop[0]], tuple(sorted(loop)), first[1]))
            continue
        cvs = sorted(events[p][1] for p in members)
        types = [local[v] for v in cvs]
        if len(cvs) > 1:
            assert all(t.tag == "S" for t in types)
        lt = types[0]
        vertices.append(KRVertex(new_id, lt.tag, f.values[cvs[0]], tuple(cvs), None, lt))

    raw_edges = []
    for start, end, chain in chains:
        lo, hi = kr_id[start], kr_id[end]
        if lo == hi:
            continue  # plateau between merged saddles
        leaf = arcs[chain[len(chain) // 2]].leaf
        raw_edges.append((lo, hi, min(leaf.edges), leaf))
    raw_edges.sort(key=lambda t: (t[0], t[1], t[2]))
    edges = tuple(KREdge(i, lo, hi, leaf) for i, (lo, hi, _, leaf) in enumerate(raw_edges))
    g = KRGraph(tuple(vertices), edges, rank)
    _check_graph(g)
    return g


def _check_graph(g: KRGraph) -> None:
    assert g.is_connected(), "KR graph is not connected"
    for v in g.vertices:
        down, up = g.degree(v.id)
        if v.vtype in ("P", "N", "Boundary"):
            assert down + up == 1, f"KR vertex {v.id} of type {v.vtype} has degree {down + up}"
        else:
            assert down >= 1 and up >= 1, f"S-vertex {v.id} lacks an edge below or above"


def to_dot(g: KRGraph) -> str:
    lines = ["graph KR {"]
    for v in g.vertices:
        lines.append(f'  {v.id} [label="{v.id}:{v.label}:{v.level}"];')
    for e in g.edges:
        lines.append(f"  {e.lo} -- {e.hi};")
    lines.append("}")
    return "\n".join(lines) + "\n"
