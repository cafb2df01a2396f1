"""Command-line interface: ``krtool <subcommand> ...``.

Exit codes: 0 success, 1 input or parse error, 2 axiom or model violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .annotations import load_annotations
from .automorphisms import aut_order, enumerate_graph_auts, max_aut_budget, FramedAut
from .critical import detect_critical, index_sum, load_values, morse_check, parse_rational
from .errors import AutBudget, InputError, KRError
from .framed import classify_edges, frame
from .homology import homology_action
from .local_model import (
    HomogPoly2,
    classify,
    factor_profile,
    linear_part,
    milnor_number,
    reduced_hamiltonian,
    symmetry_order,
)
from .mesh import invariants, load_mesh
from .reeb import build_kr_graph, to_dot
from .report import orbit_report

FORMATS = ("json", "text", "dot")


class CLIError(InputError):
    module = "cli_io"


def _read(path, what):
    if path is None:
        raise CLIError(f"no {what} file given")
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CLIError(f"cannot read {what} file {path}: {exc.strerror}") from None
    except UnicodeDecodeError:
        raise CLIError(f"{what} file {path} is not UTF-8") from None


def _json_default(x):
    if isinstance(x, Fraction):
        return str(x)
    raise TypeError(f"not serializable: {type(x).__name__}")


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, default=_json_default) + "\n"


def _text_lines(obj, prefix="") -> list[str]:
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{prefix}{k}:")
                lines.extend(_text_lines(v, prefix + "  "))
            else:
                lines.append(f"{prefix}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, list) and _flat(item):
                lines.append(f"{prefix}- {_scalar(item)}")
            elif isinstance(item, (dict, list)):
                lines.append(f"{prefix}-")
                lines.extend(_text_lines(item, prefix + "  "))
            else:
                lines.append(f"{prefix}- {_scalar(item)}")
    else:
        lines.append(f"{prefix}{_scalar(obj)}")
    return lines


def _flat(v):
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _scalar(v):
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if isinstance(v, dict):
        return json.dumps(v, sort_keys=True)
    return str(v)


def render(obj, fmt) -> str:
    if fmt == "text":
        return "\n".join(_text_lines(obj)) + "\n"
    return dumps(obj)


class Inputs:
    """Lazily loaded mesh, values and annotations for one invocation."""

    def __init__(self, args):
        self.args = args
        self._mesh = self._f = self._ann = None

    @property
    def mesh(self):
        if self._mesh is None:
            self._mesh = load_mesh(_read(self.args.mesh_path, "mesh"))
        return self._mesh

    @property
    def f(self):
        if self._f is None:
            self._f = load_values(_read(self.args.values_path, "values"), self.mesh.vertex_count)
        return self._f

    @property
    def annotations(self):
        if self._ann is None:
            path = self.args.annotations
            self._ann = load_annotations(_read(path, "annotations"), self.mesh.vertex_count) if path else {}
        return self._ann

    def graph(self):
        crit = detect_critical(self.mesh, self.f)
        return crit, build_kr_graph(self.mesh, self.f, crit, self.annotations)


def cmd_mesh_info(inp: Inputs, args):
    s = inp.mesh
    inv = invariants(s)
    return {
        **inv.to_dict(),
        "name": inv.name,
        "vertices": s.vertex_count,
        "edges": len(s.edges),
        "triangles": len(s.triangles),
        "boundary_loops": [list(loop) for loop in s.boundary_loops],
    }


def cmd_critical(inp: Inputs, args):
    s, f = inp.mesh, inp.f
    crit = detect_critical(s, f)
    return {
        "critical": [c.to_dict() for c in crit],
        "index_sum": index_sum(crit),
        "euler_char": invariants(s).euler_char,
        "morse": morse_check(s, f, crit),
    }


def cmd_reeb(inp: Inputs, args):
    _, g = inp.graph()
    if args.dot:
        try:
            Path(args.dot).write_text(to_dot(g), encoding="utf-8")
        except OSError as exc:
            raise CLIError(f"cannot write {args.dot}: {exc.strerror}") from None
    if args.format == "dot":
        return to_dot(g)
    d = g.to_dict()
    d["first_betti"] = g.first_betti()
    return d


def cmd_frame(inp: Inputs, args):
    _, g = inp.graph()
    fg = frame(g)
    ec = classify_edges(fg)
    d = fg.to_dict()
    d["k"] = ec.k
    d["internal"] = {"s_edges": ec.s_edges, "n_edges": ec.n_edges}
    return d


def cmd_aut(inp: Inputs, args):
    _, g = inp.graph()
    fg = frame(g)
    count, total = aut_order(fg)
    d = {"graph_aut_count": count, "ambient_total": total, "base_edges": len(g.edges)}
    if args.list:
        budget = max_aut_budget()
        if total > budget:
            raise AutBudget(f"{total} automorphisms (nu, o) exceed the budget {budget} (raise KRTOOL_MAX_AUT)")
        from itertools import product

        items = []
        for nu in enumerate_graph_auts(fg):
            for o in product((1, -1), repeat=len(g.edges)):
                items.append(FramedAut(nu, o).to_dict())
        d["automorphisms"] = items
    return d


def cmd_homology(inp: Inputs, args):
    crit, g = inp.graph()
    ec = classify_edges(frame(g))
    return homology_action(inp.mesh, g, ec, crit).to_dict()


def cmd_report(inp: Inputs, args):
    rep = orbit_report(inp.mesh, inp.f, inp.annotations)
    if args.format == "text":
        return rep.to_text()
    return rep.to_dict()


def cmd_localmodel(inp: Inputs, args):
    try:
        d = int(args.degree)
    except ValueError:
        raise CLIError(f"degree must be an integer, got {args.degree!r}") from None
    coeffs = [parse_rational(c) for c in args.coeffs]
    g = HomogPoly2.germ(d, coeffs)
    prof = factor_profile(g)
    lt = classify(g, args.n_z)
    F = reduced_hamiltonian(g, prof)
    mu = milnor_number(g)
    sym = symmetry_order(g)
    return {
        "polynomial": g.to_text(),
        "type": lt.to_dict(),
        "profile": prof.to_dict(),
        "reduced_hamiltonian": [F[0].to_text(), F[1].to_text()],
        "linear_part": linear_part(F).to_dict(),
        "milnor": mu.to_dict(),
        "symmetry_order": sym,
    }


COMMANDS = {
    "mesh-info": (cmd_mesh_info, "topological invariants of a mesh"),
    "critical": (cmd_critical, "critical vertices of a PL function"),
    "reeb": (cmd_reeb, "Kronrod-Reeb graph"),
    "frame": (cmd_frame, "framed KR graph and edge classes"),
    "aut": (cmd_aut, "automorphisms of the framed KR graph"),
    "homology": (cmd_homology, "relative homology and twist matrices"),
    "report": (cmd_report, "homotopy-type report"),
    "localmodel": (cmd_localmodel, "classify a homogeneous polynomial germ"),
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="krtool", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, metavar="command")
    for name, (_, help_text) in COMMANDS.items():
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--format", choices=FORMATS, default="json")
        if name == "localmodel":
            sp.add_argument("degree")
            sp.add_argument("coeffs", nargs="*")
            sp.add_argument("--n-z", dest="n_z", type=int, default=None, help="override the cyclic order n_z")
            continue
        sp.add_argument("mesh_pos", nargs="?", metavar="MESH")
        if name != "mesh-info":
            sp.add_argument("values_pos", nargs="?", metavar="VALUES")
        sp.add_argument("--mesh")
        sp.add_argument("--values")
        sp.add_argument("--annotations")
        if name == "reeb":
            sp.add_argument("--dot", metavar="PATH", help="also write the graph in DOT format to PATH")
        if name == "aut":
            sp.add_argument("--list", action="store_true", help="list every automorphism (nu, o)")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command != "localmodel":
        args.mesh_path = args.mesh or args.mesh_pos
        args.values_path = args.values or getattr(args, "values_pos", None)
    else:
        args.annotations = None
    func = COMMANDS[args.command][0]
    if args.format == "dot" and args.command != "reeb":
        print(f"cli_io: CLIError: --format dot is only available for reeb", file=sys.stderr)
        return 1
    try:
        out = func(Inputs(args), args)
    except KRError as exc:
        print(exc.describe(), file=sys.stderr)
        return exc.exit_code
    sys.stdout.write(out if isinstance(out, str) else render(out, args.format))
    return 0


if __name__ == "__main__":
    sys.exit(main())
