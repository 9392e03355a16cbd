"""Gauss codes for knots, knotoids and graphoids: parsing, printing, canonical forms.

Text format::

    knot: O+4 U+5 O+2 U+3 ...
    knotoid: O+1 U-2 ...

    graphoid
    vertex a: e1 e3 e2          # edges around a, counterclockwise
    edge e1 = a->b: O+1
    edge e5 = b->c:
    distinguished c e f g

Tokens are separated by single spaces, an entry is ``O`` or ``U``, then
``+`` or ``-``, then the crossing id.  ``#`` starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .errors import GaussSyntaxError, KindMismatch, ValidationError

KNOT = "knot"
KNOTOID = "knotoid"
GRAPHOID = "graphoid"

_NAME = re.compile(r"[a-z0-9_]+")
_ENTRY = re.compile(r"([OU])([+-])(\d+)")


@dataclass(frozen=True)
class Entry:
    ident: int
    strand: str  # "O" or "U"
    sign: int  # +1 or -1

    def __str__(self) -> str:
        return f"{self.strand}{'+' if self.sign > 0 else '-'}{self.ident}"

    def relabeled(self, mapping: dict) -> "Entry":
        return Entry(mapping[self.ident], self.strand, self.sign)


@dataclass(frozen=True)
class GraphEdge:
    name: str
    tail: str
    head: str
    entries: tuple = ()


@dataclass(frozen=True)
class GaussDiagram:
    kind: str
    entries: tuple = ()
    vertices: tuple = ()  # ((name, (edge, ...)), ...) for graphoids
    edges: tuple = ()  # GraphEdge, ... for graphoids
    distinguished: tuple = ()

    def all_entries(self) -> list:
        if self.kind == GRAPHOID:
            return [e for ed in self.edges for e in ed.entries]
        return list(self.entries)

    @property
    def crossings(self) -> list:
        seen = []
        for e in self.all_entries():
            if e.ident not in seen:
                seen.append(e.ident)
        return seen

    def rotation(self, vertex: str) -> tuple:
        return dict(self.vertices)[vertex]

    def edge(self, name: str) -> GraphEdge:
        for ed in self.edges:
            if ed.name == name:
                return ed
        raise KeyError(name)

    def __str__(self) -> str:
        return serialize(self)


def validate(G: GaussDiagram) -> GaussDiagram:
    occ: dict[int, list] = {}
    for e in G.all_entries():
        if e.ident <= 0:
            raise ValidationError(e.ident, "crossing ids must be positive")
        occ.setdefault(e.ident, []).append(e)
    for ident, es in occ.items():
        strands = sorted(e.strand for e in es)
        if strands != ["O", "U"]:
            what = "".join(strands)
            raise ValidationError(ident, f"needs exactly one O and one U occurrence, found {what or 'none'}")
        if es[0].sign != es[1].sign:
            raise ValidationError(ident, "signs of the two occurrences differ")
    if G.kind == GRAPHOID:
        names = [v for v, _ in G.vertices]
        if len(set(names)) != len(names):
            raise ValidationError(0, "repeated vertex name")
        enames = [ed.name for ed in G.edges]
        if len(set(enames)) != len(enames):
            raise ValidationError(0, "repeated edge name")
        incidence = {v: [] for v in names}
        for ed in G.edges:
            for end in (ed.tail, ed.head):
                if end not in incidence:
                    raise ValidationError(0, f"edge {ed.name} references unknown vertex {end}")
            if ed.tail == ed.head:
                raise ValidationError(0, f"edge {ed.name} is a loop")
            incidence[ed.tail].append(ed.name)
            incidence[ed.head].append(ed.name)
        for v, rot in G.vertices:
            if sorted(rot) != sorted(incidence[v]):
                raise ValidationError(0, f"rotation at {v} does not list exactly its incident edges")
        for v in G.distinguished:
            if v not in incidence:
                raise ValidationError(0, f"distinguished vertex {v} is unknown")
    elif G.kind not in (KNOT, KNOTOID):
        raise ValidationError(0, f"unknown kind {G.kind}")
    return G


# parsing ----------------------------------------------------------------------


def _strip_comment(line: str) -> str:
    i = line.find("#")
    return line if i < 0 else line[:i]


def _parse_entries(body: str, lineno: int, col0: int) -> tuple:
    out = []
    if body == "":
        return ()
    if not body.startswith(" "):
        raise GaussSyntaxError(lineno, col0, "a space after ':'")
    pos = 1
    for tok in body[1:].split(" "):
        m = _ENTRY.fullmatch(tok)
        if not m:
            raise GaussSyntaxError(lineno, col0 + pos, "an entry like O+1 or U-2")
        out.append(Entry(int(m.group(3)), m.group(1), 1 if m.group(2) == "+" else -1))
        pos += len(tok) + 1
    return tuple(out)


def parse(text: str) -> GaussDiagram:
    lines = [(i + 1, _strip_comment(l).rstrip()) for i, l in enumerate(text.split("\n"))]
    lines = [(i, l) for i, l in lines if l.strip()]
    if not lines:
        raise GaussSyntaxError(1, 1, "'knot:', 'knotoid:' or 'graphoid'")
    lineno, first = lines[0]
    for kind in (KNOTOID, KNOT):
        if first.startswith(kind + ":"):
            if len(lines) > 1:
                raise GaussSyntaxError(lines[1][0], 1, "end of input")
            entries = _parse_entries(first[len(kind) + 1:], lineno, len(kind) + 2)
            return validate(GaussDiagram(kind, entries))
    if first != GRAPHOID:
        raise GaussSyntaxError(lineno, 1, "'knot:', 'knotoid:' or 'graphoid'")
    vertices, edges, dist = [], [], ()
    for lineno, line in lines[1:]:
        if line.startswith("vertex "):
            name, colon, rest = line[7:].partition(":")
            if not _NAME.fullmatch(name):
                raise GaussSyntaxError(lineno, 8, "a vertex name")
            if not colon:
                raise GaussSyntaxError(lineno, 8 + len(name), "':'")
            rot = rest.split(" ")[1:] if rest else []
            if rest and not rest.startswith(" "):
                raise GaussSyntaxError(lineno, 9 + len(name), "a space")
            for e in rot:
                if not _NAME.fullmatch(e):
                    raise GaussSyntaxError(lineno, 9 + len(name), "an edge name")
            vertices.append((name, tuple(rot)))
        elif line.startswith("edge "):
            m = re.match(r"edge ([a-z0-9_]+) = ([a-z0-9_]+)->([a-z0-9_]+):", line)
            if not m:
                raise GaussSyntaxError(lineno, 6, "'NAME = NAME->NAME:'")
            entries = _parse_entries(line[m.end():], lineno, m.end() + 1)
            edges.append(GraphEdge(m.group(1), m.group(2), m.group(3), entries))
        elif line.startswith("distinguished"):
            names = line.split(" ")[1:]
            for v in names:
                if not _NAME.fullmatch(v):
                    raise GaussSyntaxError(lineno, 15, "a vertex name")
            dist = tuple(names)
        else:
            raise GaussSyntaxError(lineno, 1, "'vertex', 'edge' or 'distinguished'")
    return validate(GaussDiagram(GRAPHOID, (), tuple(vertices), tuple(edges), dist))


def _join(head: str, entries: Iterable) -> str:
    body = " ".join(str(e) for e in entries)
    return f"{head} {body}" if body else head


def serialize(G: GaussDiagram) -> str:
    if G.kind in (KNOT, KNOTOID):
        return _join(G.kind + ":", G.entries)
    out = [GRAPHOID]
    for v, rot in G.vertices:
        out.append(_join(f"vertex {v}:", rot))
    for ed in G.edges:
        out.append(_join(f"edge {ed.name} = {ed.tail}->{ed.head}:", ed.entries))
    if G.distinguished:
        out.append(_join("distinguished", G.distinguished))
    return "\n".join(out)


# canonical forms --------------------------------------------------------------


def relabel_by_appearance(entries: Iterable[Entry]) -> tuple:
    mapping: dict[int, int] = {}
    out = []
    for e in entries:
        if e.ident not in mapping:
            mapping[e.ident] = len(mapping) + 1
        out.append(e.relabeled(mapping))
    return tuple(out)


def _natural(name: str):
    return [int(p) if p.isdigit() else p for p in re.split(r"(\d+)", name)]


def canonical_form(G: GaussDiagram) -> GaussDiagram:
    """Normal form for equality tests.

    Knotoids: crossing ids renumbered by first appearance.  Knots: least
    serialization over every basepoint rotation, ids renumbered by first
    appearance.  Graphoids: vertices, edges and distinguished vertices
    sorted by name, ids renumbered along that edge order, each rotation
    started at its least edge name.
    """
    if G.kind == KNOTOID:
        return GaussDiagram(KNOTOID, relabel_by_appearance(G.entries))
    if G.kind == KNOT:
        es = list(G.entries)
        if not es:
            return G
        best = None
        for k in range(len(es)):
            cand = relabel_by_appearance(es[k:] + es[:k])
            key = _join("knot:", cand)
            if best is None or key < best[0]:
                best = (key, cand)
        return GaussDiagram(KNOT, best[1])
    edges = sorted(G.edges, key=lambda e: _natural(e.name))
    mapping: dict[int, int] = {}
    for ed in edges:
        for e in ed.entries:
            mapping.setdefault(e.ident, len(mapping) + 1)
    edges = tuple(GraphEdge(ed.name, ed.tail, ed.head, tuple(e.relabeled(mapping) for e in ed.entries)) for ed in edges)
    vertices = []
    for v, rot in sorted(G.vertices, key=lambda vr: _natural(vr[0])):
        if rot:
            k = min(range(len(rot)), key=lambda i: _natural(rot[i]))
            rot = rot[k:] + rot[:k]
        vertices.append((v, tuple(rot)))
    return GaussDiagram(GRAPHOID, (), tuple(vertices), edges, tuple(sorted(G.distinguished, key=_natural)))


def diagrams_equal(A: GaussDiagram, B: GaussDiagram) -> bool:
    if A.kind != B.kind:
        raise KindMismatch(f"{A.kind} vs {B.kind}")
    return serialize(canonical_form(A)) == serialize(canonical_form(B))


def knotoid(entries: Iterable[Entry]) -> GaussDiagram:
    return validate(GaussDiagram(KNOTOID, tuple(entries)))
