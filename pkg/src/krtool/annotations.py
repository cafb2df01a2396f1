"""Per-vertex local-model annotations.

Annotation file lines (``#`` comments allowed)::

    v poly d c_0 ... c_d      homogeneous local model sum c_i x^(d-i) y^i
    v type S|P|N|NN|NZ [n_z]  direct type, optionally with the cyclic order n_z
    v degenerate              the vertex is a degenerate extreme (needs a model)

A ``poly`` and a ``type`` line may both be given for one vertex; the type line
then only overrides n_z and must agree with the polynomial's verdict.
"""

from __future__ import annotations

from dataclasses import dataclass

from .critical import parse_rational
from .errors import AnnotationError, KRError
from .local_model import HomogPoly2, LocalType, classify


@dataclass(frozen=True)
class Annotation:
    vertex: int
    poly: HomogPoly2 | None = None
    declared: LocalType | None = None
    degenerate: bool = False

    @property
    def local_type(self) -> LocalType | None:
        """Verdict from the polynomial (n_z possibly overridden) or the declared type."""
        if self.poly is not None:
            override = self.declared.n_z if self.declared is not None else None
            return classify(self.poly, override)
        return self.declared

    @property
    def has_model(self) -> bool:
        return self.poly is not None or self.declared is not None


def _parse_type(tokens, lineno) -> LocalType:
    if not tokens:
        raise AnnotationError(f"line {lineno}: type line needs a tag")
    tag = tokens[0]
    n_z = None
    if len(tokens) > 2:
        raise AnnotationError(f"line {lineno}: too many fields in type line")
    if len(tokens) == 2:
        try:
            n_z = int(tokens[1])
        except ValueError:
            raise AnnotationError(f"line {lineno}: n_z must be an integer") from None
        if n_z < 1:
            raise AnnotationError(f"line {lineno}: n_z must be positive")
    if tag in ("S", "P"):
        if n_z is not None:
            raise AnnotationError(f"line {lineno}: n_z only applies to N-points")
        return LocalType(tag)
    if tag == "N":
        return LocalType("N", None, n_z)
    if tag in ("NN", "NZ"):
        return LocalType("N", tag, n_z)
    raise AnnotationError(f"line {lineno}: unknown type {tag!r}")


def load_annotations(text: str, vertex_count: int | None = None) -> dict[int, Annotation]:
    polys: dict[int, HomogPoly2] = {}
    types: dict[int, LocalType] = {}
    degenerate: set[int] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        try:
            v = int(tok[0])
        except ValueError:
            raise AnnotationError(f"line {lineno}: bad vertex id {tok[0]!r}") from None
        if v < 0 or (vertex_count is not None and v >= vertex_count):
            raise AnnotationError(f"line {lineno}: vertex {v} out of range")
        if len(tok) < 2:
            raise AnnotationError(f"line {lineno}: missing annotation kind")
        kind = tok[1]
        if kind == "poly":
            if v in polys:
                raise AnnotationError(f"line {lineno}: vertex {v} already has a polynomial")
            try:
                d = int(tok[2])
                coeffs = [parse_rational(t) for t in tok[3:]]
                polys[v] = HomogPoly2.germ(d, coeffs)
            except (IndexError, ValueError):
                raise AnnotationError(f"line {lineno}: malformed poly line") from None
            except KRError as exc:
                raise AnnotationError(f"line {lineno}: {exc}") from None
        elif kind == "type":
            if v in types:
                raise AnnotationError(f"line {lineno}: vertex {v} already has a type")
            types[v] = _parse_type(tok[2:], lineno)
        elif kind == "degenerate":
            if len(tok) != 2:
                raise AnnotationError(f"line {lineno}: degenerate takes no arguments")
            degenerate.add(v)
        else:
            raise AnnotationError(f"line {lineno}: unknown annotation kind {kind!r}")
    out = {}
    for v in sorted(set(polys) | set(types) | degenerate):
        ann = Annotation(v, polys.get(v), types.get(v), v in degenerate)
        _check_agreement(ann)
        out[v] = ann
    return out


def _check_agreement(ann: Annotation) -> None:
    if ann.poly is None or ann.declared is None:
        return
    verdict = classify(ann.poly)
    decl = ann.declared
    if decl.tag != verdict.tag or (decl.subtype is not None and decl.subtype != verdict.subtype):
        raise AnnotationError(
            f"vertex {ann.vertex}: declared type {decl.label} contradicts the polynomial's verdict {verdict.label}"
        )


def as_annotations(mapping) -> dict[int, Annotation]:
    """Accept ``{v: LocalType}`` or ``{v: Annotation}``."""
    out = {}
    for v, a in (mapping or {}).items():
        if isinstance(a, Annotation):
            out[int(v)] = a
        elif isinstance(a, LocalType):
            out[int(v)] = Annotation(int(v), declared=a)
        elif isinstance(a, HomogPoly2):
            out[int(v)] = Annotation(int(v), poly=a)
        else:
            raise TypeError(f"cannot use {a!r} as an annotation")
    return out
