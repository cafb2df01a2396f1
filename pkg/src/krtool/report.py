"""Homotopy-type report for the stabilizer and orbit of a function.

The pipeline runs mesh -> critical vertices -> KR graph -> framing ->
automorphisms -> twist action and collects the invariants into one record.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

from .annotations import as_annotations
from .automorphisms import aut_order
from .critical import PLFunction, check_axbd, detect_critical
from .errors import AxiomViolation, NoSPoint, UnknownSurface
from .framed import classify_edges, frame
from .homology import homology_action
from .local_model import milnor_number
from .mesh import SurfaceInvariants, TriSurface, invariants
from .reeb import build_kr_graph

HIGHER_PI = "pi_i Orb = pi_i M for i >= 3"

# pi_1 of the identity component of the diffeomorphism group, unmarked.
# Sources: Earle-Eells (1967), Earle-Schatz (1970), Gramain (1973).
PI1_DIFF_TABLE = {
    "sphere": "Z_2",
    "projective plane": "Z_2",
    "torus": "Z^2",
    "Klein bottle": "Z",
    "disk": "Z",
    "Moebius band": "Z",
    "annulus": "Z",
}


def stab_id_type(counts: dict, orientable: bool, closed: bool = True) -> str:
    """``Contractible`` or ``Circle``."""
    n = sum(counts.get(k, 0) for k in ("s", "p", "a_NN", "b_NZ", "n_other"))
    if n == 0 and closed:
        raise AxiomViolation("a function on a closed surface must have critical points", axiom="AxSPN")
    n_points = counts.get("a_NN", 0) + counts.get("b_NZ", 0) + counts.get("n_other", 0)
    if counts.get("s", 0) > 0 or n_points > 0 or not orientable:
        return "Contractible"
    return "Circle"


def pi0_twists(k: int, s: int) -> str:
    if s < 1:
        raise NoSPoint("the twist group description needs at least one S-point")
    return f"Z^{k}"


def diff_cr_contractible(chi: int, n: int, b: int) -> bool:
    return chi < n + b


def pi1_diff_lookup(inv: SurfaceInvariants, n: int = 0) -> str:
    """pi_1 Diff_Id(M) of the unmarked surface; ``n`` is accepted but unused."""
    if inv.euler_char < 0:
        return "1"
    try:
        return PI1_DIFF_TABLE[inv.name]
    except KeyError:
        raise UnknownSurface(f"no pi_1 entry for {inv.name} (chi = {inv.euler_char})") from None


@dataclass
class HomotopyReport:
    surface: dict
    n: int
    counts: dict
    stab_id: str
    pi0_twist_rank: int | None
    pi0_twists: str | None
    diff_cr_contractible: bool
    pi1_diff: str
    cw_dim_bound: int
    pi2_orbit: int
    higher_pi: str
    exact_sequence: dict
    axioms: dict
    kr_graph: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "HomotopyReport":
        return cls(**d)

    @classmethod
    def from_json(cls, text: str) -> "HomotopyReport":
        return cls.from_dict(json.loads(text))

    def to_text(self) -> str:
        lines = [
            f"surface: {self.surface['name']} (chi={self.surface['euler_char']}, "
            f"b={self.surface['boundary_count']}, orientable={self.surface['orientable']})",
            f"critical points: n={self.n} " + " ".join(f"{k}={v}" for k, v in sorted(self.counts.items())),
            f"Stab_Id: {self.stab_id}",
            f"pi_0 twists: {self.pi0_twists if self.pi0_twists is not None else 'not defined (no S-point)'}",
            f"Diff_Id(M, critical set) contractible: {self.diff_cr_contractible}",
            f"pi_1 Diff_Id(M): {self.pi1_diff}",
            f"Orb: CW dimension <= {self.cw_dim_bound}, pi_2 = {self.pi2_orbit}, {self.higher_pi}",
        ]
        es = self.exact_sequence
        if es.get("status") == "refused":
            lines.append(f"exact sequence: refused ({es['reason']})")
        else:
            l_est = es["free_rank_l_estimate"]
            lines.append(
                "exact sequence: 1 -> pi_1 Diff_Id(M) -> pi_1 Orb -> Z^l x G -> 1 with "
                f"l_estimate={'not computed' if l_est is None else l_est}, l <= {es['l_upper']}, "
                f"|G| <= {es['ambient_total']} ({es['ambient_graph_aut']} graph automorphisms)"
            )
        lines.append("axioms: " + " ".join(f"{k}={v}" for k, v in sorted(self.axioms.items())))
        return "\n".join(lines) + "\n"


def point_counts(graph, criticals) -> dict:
    local = {}
    for v in graph.vertices:
        if v.vtype == "Boundary":
            continue
        for c in v.preimage:
            local[c] = v
    counts = {"s": 0, "p": 0, "a_NN": 0, "b_NZ": 0, "n_other": 0}
    for c in criticals:
        v = local[c.vertex_id]
        if v.vtype == "S":
            counts["s"] += 1
        elif v.vtype == "P":
            counts["p"] += 1
        elif v.subtype == "NN":
            counts["a_NN"] += 1
        elif v.subtype == "NZ":
            counts["b_NZ"] += 1
        else:
            counts["n_other"] += 1
    return counts


def check_axfibr(annotations) -> None:
    """Every annotated polynomial model must have finite Milnor number."""
    for v, ann in sorted(as_annotations(annotations).items()):
        if ann.poly is None:
            continue
        if milnor_number(ann.poly).mu_real is None:
            raise AxiomViolation(
                f"vertex {v}: local model {ann.poly.to_text()} has infinite Milnor number",
                axiom="AxFibr-criterion",
                module="homotopy_report",
            )


def orbit_report(s: TriSurface, f: PLFunction, annotations=None) -> HomotopyReport:
    inv = invariants(s)
    check_axbd(s, f)
    criticals = detect_critical(s, f)
    graph = build_kr_graph(s, f, criticals, annotations)
    check_axfibr(annotations)
    fg = frame(graph)
    ec = classify_edges(fg)
    counts = point_counts(graph, criticals)
    n = len(criticals)
    closed = inv.boundary_count == 0
    stab = stab_id_type(counts, inv.orientable, closed)
    graph_aut, ambient = aut_order(fg)

    if counts["s"] >= 1:
        if inv.orientable:
            ha = homology_action(s, graph, ec, criticals)
            l_est = ha.l_estimate
            rel_kernel = ha.rel_kernel_rank
        else:
            l_est = None
            rel_kernel = None
        exact = {
            "status": "computed" if l_est is not None else "l not computed (non-orientable)",
            "free_rank_l_estimate": l_est,
            "rel_kernel_rank": rel_kernel,
            "l_upper": ec.k,
            "ambient_graph_aut": graph_aut,
            "ambient_total": ambient,
        }
        pi0_rank, pi0_desc = ec.k, pi0_twists(ec.k, counts["s"])
    else:
        try:
            pi0_twists(ec.k, counts["s"])
        except NoSPoint as exc:
            reason = exc.describe()
        exact = {
            "status": "refused",
            "reason": reason,
            "ambient_graph_aut": graph_aut,
            "ambient_total": ambient,
        }
        pi0_rank, pi0_desc = None, None

    return HomotopyReport(
        surface={**inv.to_dict(), "name": inv.name},
        n=n,
        counts=counts,
        stab_id=stab,
        pi0_twist_rank=pi0_rank,
        pi0_twists=pi0_desc,
        diff_cr_contractible=diff_cr_contractible(inv.euler_char, n, inv.boundary_count),
        pi1_diff=pi1_diff_lookup(inv, n),
        cw_dim_bound=2 * n - 1,
        pi2_orbit=0,
        higher_pi=HIGHER_PI,
        exact_sequence=exact,
        axioms={"AxBd": True, "AxSPN": True, "AxFibr_criterion": True},
        kr_graph={
            "vertices": len(graph.vertices),
            "edges": len(graph.edges),
            "first_betti": graph.first_betti(),
            "internal_edges": ec.k,
        },
    )

