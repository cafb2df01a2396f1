"""Framed KR-graphs: tangent half-edges at N-vertices, internal/external edges."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import MissingCyclicOrder
from .local_model import framing_cardinality
from .reeb import KRGraph


@dataclass(frozen=True, eq=False)
class FramedKRGraph:
    """``tangent[w]`` lists the tangent-edge ids at N-vertex ``w``.

    Tangent ids continue after the base edge ids, so every edge of the framed
    graph has a unique integer id.
    """

    base: KRGraph
    tangent: dict

    @property
    def tangent_ids(self) -> list[int]:
        return [t for w in sorted(self.tangent) for t in self.tangent[w]]

    @property
    def tangent_vertex(self) -> dict[int, int]:
        return {t: w for w, ts in self.tangent.items() for t in ts}

    @property
    def all_edge_ids(self) -> list[int]:
        return [e.id for e in self.base.edges] + self.tangent_ids

    def framed_kr_values(self) -> dict:
        """Levels of vertices and of tangent edges (which inherit their vertex level)."""
        values = {("v", v.id): v.level for v in self.base.vertices}
        for t, w in self.tangent_vertex.items():
            values[("t", t)] = self.base.vertices[w].level
        return values

    def to_dict(self) -> dict:
        d = self.base.to_dict()
        d["tangent"] = {str(w): list(ts) for w, ts in sorted(self.tangent.items())}
        d["edge_class"] = {str(k): v for k, v in classify_edges(self).as_strings().items()}
        return d


def frame(g: KRGraph) -> FramedKRGraph:
    tangent = {}
    nxt = len(g.edges)
    for v in g.vertices:
        if v.vtype != "N":
            continue
        if v.n_z is None:
            raise MissingCyclicOrder(f"N-vertex {v.id} (mesh vertex {v.preimage[0]}) has no cyclic order n_z")
        k = framing_cardinality(v.n_z)
        tangent[v.id] = tuple(range(nxt, nxt + k))
        nxt += k
    return FramedKRGraph(g, tangent)


@dataclass(frozen=True)
class EdgeClass:
    """Per base edge: ``NEdge`` or ``SEdge`` if internal, ``External`` otherwise."""

    base: dict
    tangent: tuple

    @property
    def internal(self) -> list[int]:
        return [e for e, c in sorted(self.base.items()) if c != "External"]

    @property
    def s_edges(self) -> list[int]:
        return [e for e, c in sorted(self.base.items()) if c == "SEdge"]

    @property
    def n_edges(self) -> list[int]:
        return [e for e, c in sorted(self.base.items()) if c == "NEdge"]

    @property
    def external(self) -> list[int]:
        return [e for e, c in sorted(self.base.items()) if c == "External"] + list(self.tangent)

    @property
    def k(self) -> int:
        return len(self.internal)

    def as_strings(self) -> dict:
        out = {e: ("external" if c == "External" else "internal") for e, c in self.base.items()}
        for t in self.tangent:
            out[t] = "external"
        return dict(sorted(out.items()))


def classify_edges(fg: FramedKRGraph) -> EdgeClass:
    vt = {v.id: v.vtype for v in fg.base.vertices}
    out = {}
    for e in fg.base.edges:
        ends = (vt[e.lo], vt[e.hi])
        if "P" in ends or "Boundary" in ends:
            out[e.id] = "External"
        elif "N" in ends:
            out[e.id] = "NEdge"
        else:
            out[e.id] = "SEdge"
    return EdgeClass(out, tuple(fg.tangent_ids))
