"""PL functions on triangulated surfaces and their critical vertices.

Vertices are totally ordered by ``(value, vertex_id)``; every comparison below
("lower", "higher") refers to that order, so equal stored values never need to
be perturbed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from ._unionfind import UnionFind
from .errors import AxBdViolation, BoundaryVertex, MixedDegenerate, ParseError
from .mesh import TriSurface


def parse_rational(token: str) -> Fraction:
    token = token.strip()
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational number: {token!r}", module="pl_critical") from None


@dataclass(frozen=True, eq=False)
class PLFunction:
    """Exact rational values, one per vertex."""

    values: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))

    def __len__(self):
        return len(self.values)

    def key(self, v: int):
        return (self.values[v], v)

    @cached_property
    def order(self) -> tuple[int, ...]:
        """Vertices sorted by the tie-broken order."""
        return tuple(sorted(range(len(self.values)), key=self.key))

    @cached_property
    def rank(self) -> tuple[int, ...]:
        r = [0] * len(self.values)
        for i, v in enumerate(self.order):
            r[v] = i
        return tuple(r)

    def below(self, u: int, v: int) -> bool:
        """True if ``u`` precedes ``v`` in the tie-broken order."""
        return self.rank[u] < self.rank[v]


def load_values(text: str, vertex_count: int | None = None) -> PLFunction:
    vals = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        vals.append(parse_rational(line))
    if vertex_count is not None and len(vals) != vertex_count:
        raise ParseError(f"values file has {len(vals)} entries, mesh has {vertex_count} vertices", module="pl_critical")
    return PLFunction(tuple(vals))


def dump_values(f: PLFunction) -> str:
    return "".join(f"{v}\n" for v in f.values)


@dataclass(frozen=True, order=True)
class CriticalVertex:
    vertex_id: int
    kind: str  # "Min" | "Max" | "Saddle"
    n: int = 0  # number of lower (= upper) link arcs for a saddle, 0 for extrema

    @property
    def pl_index(self) -> int:
        return 1 - self.n if self.kind == "Saddle" else 1

    @property
    def is_extreme(self) -> bool:
        return self.kind != "Saddle"

    def to_dict(self) -> dict:
        d = {"vertex": self.vertex_id, "kind": self.kind, "pl_index": self.pl_index}
        if self.kind == "Saddle":
            d["n"] = self.n
        return d


def _check_function(s: TriSurface, f: PLFunction):
    if len(f) != s.vertex_count:
        raise ParseError(f"function has {len(f)} values, surface has {s.vertex_count} vertices", module="pl_critical")


def check_axbd(s: TriSurface, f: PLFunction) -> None:
    """Raise AxBdViolation unless f is constant on each boundary loop with a regular collar.

    Regular collar: all interior neighbours of a loop lie strictly above, or all
    strictly below, the loop value, so no critical point hides on the boundary.
    """
    _check_function(s, f)
    for i, loop in enumerate(s.boundary_loops):
        vals = {f.values[v] for v in loop}
        if len(vals) != 1:
            raise AxBdViolation(f"boundary loop {i} (starting at vertex {loop[0]}) is not a level set: values {sorted(vals)}")
        (c,) = vals
        sides = set()
        for v in loop:
            for u in s.neighbors[v]:
                if u in s.boundary_vertices:
                    continue
                if f.values[u] == c:
                    raise AxBdViolation(f"interior vertex {u} next to boundary loop {i} has the boundary value {c}")
                sides.add(f.values[u] > c)
        if len(sides) > 1:
            raise AxBdViolation(f"f has interior values on both sides of boundary loop {i}, so the boundary is not regular")


def link_profile(s: TriSurface, f: PLFunction, v: int) -> tuple[int, int]:
    """Number of (lower, upper) arcs of the link cycle of an interior vertex."""
    _check_function(s, f)
    if not s.is_interior(v):
        raise BoundaryVertex(f"vertex {v} lies on the boundary")
    link = s.links[v]
    low = [f.below(u, v) for u in link]
    m = len(low)
    changes = sum(1 for i in range(m) if low[i] != low[i - 1])
    if changes == 0:
        return (1, 0) if low[0] else (0, 1)
    return changes // 2, changes // 2


def detect_critical(s: TriSurface, f: PLFunction) -> list[CriticalVertex]:
    """All critical interior vertices, sorted by vertex id."""
    check_axbd(s, f)
    out = []
    for v in range(s.vertex_count):
        if not s.is_interior(v):
            continue
        lo, up = link_profile(s, f, v)
        if (lo, up) == (1, 1):
            continue
        if lo == 0:
            out.append(CriticalVertex(v, "Min"))
        elif up == 0:
            out.append(CriticalVertex(v, "Max"))
        elif lo == up:
            out.append(CriticalVertex(v, "Saddle", lo))
        else:
            raise MixedDegenerate(f"vertex {v} has {lo} lower and {up} upper link arcs")
    return out


def index_sum(criticals) -> int:
    return sum(c.pl_index for c in criticals)


def level_components(s: TriSurface, f: PLFunction, c) -> UnionFind:
    """Connected components of the level set f = c, using the stored values.

    Nodes are vertices with value c (ints) and mesh edges crossing c (tuples).
    Inside a triangle the level set is always connected, so merging per
    triangle is enough.
    """
    c = Fraction(c)
    uf = UnionFind()
    val = f.values
    for tri in s.triangles:
        nodes = [v for v in tri if val[v] == c]
        for a, b in ((tri[0], tri[1]), (tri[1], tri[2]), (tri[2], tri[0])):
            if (val[a] - c) * (val[b] - c) < 0:
                nodes.append((min(a, b), max(a, b)))
        for x in nodes:
            uf.add(x)
        for x in nodes[1:]:
            uf.union(nodes[0], x)
    return uf


def morse_check(s: TriSurface, f: PLFunction, criticals) -> bool:
    """True iff every saddle is ordinary and critical vertices sit on distinct level components."""
    if any(c.kind == "Saddle" and c.n != 2 for c in criticals):
        return False
    by_value: dict = {}
    for c in criticals:
        by_value.setdefault(f.values[c.vertex_id], []).append(c.vertex_id)
    for value, vs in by_value.items():
        if len(vs) < 2:
            continue
        uf = level_components(s, f, value)
        roots = [uf.find(v) for v in vs]
        if len(set(roots)) != len(roots):
            return False
    return True
