"""Walk the height function on the grid torus through every stage of the pipeline.

Run with ``python3 demos/torus_walkthrough.py``.
"""

from krtool.automorphisms import aut_order
from krtool.corpus import build
from krtool.critical import detect_critical, index_sum
from krtool.framed import classify_edges, frame
from krtool.homology import homology_action
from krtool.mesh import invariants
from krtool.reeb import build_kr_graph, to_dot
from krtool.report import orbit_report


def main():
    s, f = build("torus")
    inv = invariants(s)
    print(f"surface: {inv.name}, chi = {inv.euler_char}, {s.vertex_count} vertices, {len(s.triangles)} triangles")

    crit = detect_critical(s, f)
    for c in crit:
        print(f"  vertex {c.vertex_id:2d}  {c.kind:6s}  value {f.values[c.vertex_id]}  index {c.pl_index:+d}")
    print(f"index sum {index_sum(crit)} = chi {inv.euler_char}")

    g = build_kr_graph(s, f, crit)
    print("\nKR graph (DOT):")
    print(to_dot(g), end="")

    fg = frame(g)
    ec = classify_edges(fg)
    print(f"internal edges: {ec.internal} (k = {ec.k})")
    count, total = aut_order(fg)
    print(f"graph automorphisms: {count}; with the sign component: {total}")

    ha = homology_action(s, g, ec, crit)
    print(f"\nH1(M) rank {ha.h1_abs.rank}, H1(M, critical set) rank {ha.h1_rel.rank}")
    for t in ha.twists:
        print(f"  twist along edge {t.edge}: {[list(r) for r in t.abs_matrix]} on H1(M)")
    print(f"l_estimate = {ha.l_estimate} (out of k = {ha.k})")

    print("\nreport:")
    print(orbit_report(s, f).to_text(), end="")


if __name__ == "__main__":
    main()
