"""Reference surfaces and functions used by the tests, demos and CLI examples.

Each builder returns ``(vertex_count, triangles, values)`` with exact values.
The shipped ``.msh``/``.val`` files in this directory are the output of
:func:`write_fixtures`; a test keeps them in sync.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from pathlib import Path

F = Fraction

HERE = Path(__file__).resolve().parent


def octahedron():
    # 0 = north pole, 1..4 equator A, B, C, D, 5 = south pole
    tris = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 1), (5, 2, 1), (5, 3, 2), (5, 4, 3), (5, 1, 4)]
    values = [F(3), F(1), F(1, 2), F(-1, 2), F(-1), F(-3)]
    return 6, tris, values


def _grid_square(a, b, c, d):
    """Split the square a-b-c-d (in cyclic order) along the diagonal a-c."""
    return [(a, b, c), (a, c, d)]


def torus_grid(rows=4, cols=4, row_values=None):
    """Flat torus, vertex (i, j) has id cols*i + j and value row_values[i]."""
    if row_values is None:
        row_values = [0, 1, 2, 1]
    vid = lambda i, j: cols * (i % rows) + (j % cols)
    tris = []
    for i in range(rows):
        for j in range(cols):
            tris += _grid_square(vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1))
    values = [F(row_values[i]) for i in range(rows) for j in range(cols)]
    return rows * cols, tris, values


RP2_FACES = [
    (1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 6, 2),
    (2, 3, 5), (3, 4, 6), (4, 5, 2), (5, 6, 3), (6, 2, 4),
]


def rp2_values_search():
    """All value assignments 0..5 on the 6-vertex RP^2 giving one min, one saddle, one max."""
    from ..critical import PLFunction, detect_critical
    from ..mesh import build_surface

    s = build_surface(6, [tuple(v - 1 for v in t) for t in RP2_FACES])
    hits = []
    for perm in permutations(range(6)):
        crit = detect_critical(s, PLFunction(perm))
        kinds = sorted(c.kind for c in crit)
        if kinds == ["Max", "Min", "Saddle"]:
            hits.append(perm)
    return hits


# first hit of rp2_values_search(), frozen so the fixture never depends on search order
RP2_VALUES = (0, 1, 2, 3, 4, 5)


def rp2():
    tris = [tuple(v - 1 for v in t) for t in RP2_FACES]
    return 6, tris, [F(v) for v in RP2_VALUES]


def klein_grid(n=4):
    """Klein bottle: rows wrap straight, columns wrap with the flip (i, n) ~ (-i, 0)."""

    def vid(i, j):
        if j == n:
            i, j = -i, 0
        return n * (i % n) + j

    tris = []
    for i in range(n):
        for j in range(n):
            tris += _grid_square(vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1))
    # height symmetric under i -> -i so it is compatible with the flip, plus a
    # small column term to break the plateau rows
    values = []
    for i in range(n):
        for j in range(n):
            h = min(i, n - i)
            values.append(F(h) + F(j, 10 * n))
    return n * n, tris, values


def genus2(rows=4, cols=4):
    """Connected sum of two row-height tori along one removed grid square each."""
    nA = rows * cols
    a_vid = lambda i, j: cols * (i % rows) + (j % cols)
    # torus B uses fresh ids, except on the glued square
    top = rows // 2
    jA = 0
    jB = 0
    # glued square of A: rows top-1, top at column jA; of B: rows 0, 1 at column jB
    glue = {
        (0, jB): a_vid(top - 1, jA),
        (1, jB): a_vid(top, jA),
        (1, jB + 1): a_vid(top, jA + 1),
        (0, jB + 1): a_vid(top - 1, jA + 1),
    }
    b_ids = {}
    nxt = nA
    for i in range(rows):
        for j in range(cols):
            if (i, j) in glue:
                continue
            b_ids[(i, j)] = nxt
            nxt += 1

    def b_vid(i, j):
        key = (i % rows, j % cols)
        return glue.get(key, b_ids.get(key))

    tris = []
    for i in range(rows):
        for j in range(cols):
            if (i, j) == (top - 1, jA):
                continue
            tris += _grid_square(a_vid(i, j), a_vid(i + 1, j), a_vid(i + 1, j + 1), a_vid(i, j + 1))
    for i in range(rows):
        for j in range(cols):
            if (i, j) == (0, jB):
                continue
            # reversed orientation on B so the sum is orientable
            tris += _grid_square(b_vid(i, j), b_vid(i, j + 1), b_vid(i + 1, j + 1), b_vid(i + 1, j))
    row_vals = [0, 1, 2, 1] if rows == 4 else [min(i, rows - i) for i in range(rows)]
    offset = row_vals[top - 1] - row_vals[0]
    values = [F(0)] * nxt
    for i in range(rows):
        for j in range(cols):
            values[a_vid(i, j)] = F(row_vals[i])
    for (i, j), v in b_ids.items():
        values[v] = F(row_vals[i] + offset)
    return nxt, tris, values


def _patch(rows, cols):
    vid = lambda i, j: cols * i + j
    tris = []
    for i in range(rows - 1):
        for j in range(cols - 1):
            tris += _grid_square(vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1))
    return tris


def disk(n=5):
    """Square patch; zero on the boundary, a single bump inside."""
    tris = _patch(n, n)
    c = (n - 1) / 2
    values = []
    for i in range(n):
        for j in range(n):
            if i in (0, n - 1) or j in (0, n - 1):
                values.append(F(0))
            else:
                values.append(F(10) - F(int(abs(i - c) + abs(j - c))))
    return n * n, tris, values


def annulus(rows=4, cols=6):
    """Cylinder, both boundary circles at level 0, two bumps in between."""
    vid = lambda i, j: cols * i + (j % cols)
    tris = []
    for i in range(rows - 1):
        for j in range(cols):
            tris += _grid_square(vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1))
    values = []
    bumps = {0: 5, cols // 2: 4}
    for i in range(rows):
        for j in range(cols):
            if i in (0, rows - 1):
                values.append(F(0))
            else:
                values.append(F(bumps.get(j, 1)) + F(i, 10))
    return rows * cols, tris, values


CORPUS = {
    "octahedron": octahedron,
    "torus": torus_grid,
    "rp2": rp2,
    "klein": klein_grid,
    "genus2": genus2,
    "disk": disk,
    "annulus": annulus,
}


# annotation fixtures: name -> (corpus mesh, annotation text)
ANNOTATED = {
    # north pole as an NZ-point of order 4, south pole as an NN-point of order 1
    "octahedron_n": ("octahedron", "0 poly 4 2 0 5 0 2\n5 type NN 1\n"),
    # the minimum as an NZ-point of order 2, which makes its edge internal
    "torus_n": ("torus", "0 poly 4 1 0 3 0 2\n"),
    # a degenerate maximum with no model is rejected
    "torus_degenerate": ("torus", "11 degenerate\n"),
    # a saddle declared P contradicts its link
    "torus_bad_saddle": ("torus", "3 type P\n"),
    # infinite Milnor number at the minimum
    "torus_flat_min": ("torus", "0 poly 4 1 0 2 0 1\n"),
}


def build(name):
    """Return ``(TriSurface, PLFunction)`` for a corpus entry."""
    from ..critical import PLFunction
    from ..mesh import build_surface

    n, tris, values = CORPUS[name]()
    return build_surface(n, tris), PLFunction(tuple(values))


def fixture_texts(name):
    from ..critical import PLFunction, dump_values
    from ..mesh import build_surface, dump_mesh

    n, tris, values = CORPUS[name]()
    return dump_mesh(build_surface(n, tris)), dump_values(PLFunction(tuple(values)))


def fixture_paths(name, directory=None):
    d = Path(directory) if directory is not None else HERE
    return d / f"{name}.msh", d / f"{name}.val"


def write_fixtures(directory=None):
    for name in CORPUS:
        mesh_text, val_text = fixture_texts(name)
        mp, vp = fixture_paths(name, directory)
        mp.write_text(f"# {name}\n" + mesh_text)
        vp.write_text(f"# {name}\n" + val_text)
    for name, (_, text) in ANNOTATED.items():
        d = Path(directory) if directory is not None else HERE
        (d / f"{name}.ann").write_text(f"# {name}\n" + text)
