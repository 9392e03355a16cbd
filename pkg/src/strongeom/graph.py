"""Linear spatial graphs projected from one of their vertices, as graphoids.

Labels follow the order in which vertices are listed.  Edges are oriented
from the smaller to the larger label and named ``e1, e2, ...`` in that
sorted order.  Edges at the witness ``x_0`` collapse to points; they are
dropped and their other endpoints are marked distinguished, which for a
cycle gives back the two legs of the knotoid.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Optional, Sequence

from .chirotope import AFFINE, PointConfig, affine_chirotope
from .errors import DegenerateConfiguration, NonGeneric, PointFileError, UnknownLabel
from .gauss import GRAPHOID, GaussDiagram, GraphEdge, diagrams_equal, validate
from .knot import (
    CombinatorialShadow,
    GeometricShadow,
    emit_entries,
    general_position_witness,
    shadow_sequences,
)
from .predicates import cross, det_sign, dot, sign, sub
from .wedge import StrongGeometry, compare_strong_geometries, strong_geometry


@dataclass(frozen=True)
class AbstractGraph:
    vertices: tuple
    edges: tuple  # (name, name) pairs

    def __post_init__(self):
        vs = tuple(self.vertices)
        if len(set(vs)) != len(vs):
            raise ValueError("repeated vertex")
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"loop at {u}")
            if u not in vs or v not in vs:
                raise UnknownLabel(u if u not in vs else v)
            key = frozenset((u, v))
            if key in seen:
                raise ValueError(f"parallel edge {u} {v}")
            seen.add(key)
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))

    def label(self, v) -> int:
        return self.vertices.index(v)

    def labeled_edges(self) -> list:
        """Edges as increasing label pairs, sorted."""
        return sorted(tuple(sorted((self.label(u), self.label(v)))) for u, v in self.edges)

    def neighbors(self, v) -> list:
        return [b if a == v else a for a, b in self.edges if v in (a, b)]

    def relabeled(self, names: dict) -> "AbstractGraph":
        return AbstractGraph(tuple(names[v] for v in self.vertices), tuple((names[u], names[v]) for u, v in self.edges))


@dataclass(frozen=True)
class LinearSpatialGraph:
    graph: AbstractGraph
    config: PointConfig  # label i carries graph.vertices[i]

    def __post_init__(self):
        if self.config.mode != AFFINE or self.config.dim != 3:
            raise ValueError("a linear spatial graph needs affine points in R^3")
        if self.config.n != len(self.graph.vertices):
            raise ValueError("one point per vertex expected")

    @classmethod
    def from_points(cls, graph: AbstractGraph, points: dict) -> "LinearSpatialGraph":
        return cls(graph, PointConfig(tuple(points[v] for v in graph.vertices), AFFINE, 3))

    def point(self, v) -> tuple:
        return self.config.coords[self.graph.label(v)]

    def mapped(self, f) -> "LinearSpatialGraph":
        return LinearSpatialGraph(self.graph, self.config.mapped(f))


def cyclic_order_from_signs(center, neighbors: Sequence, orient) -> list:
    """Counterclockwise cyclic order from pairwise signs.

    ``orient(j, k) = +1`` when ``k`` follows ``j`` counterclockwise within
    half a turn.  The reference is the least neighbor; the rest are split
    by their sign against it and each half sorted by pairwise signs.
    """
    js = sorted(neighbors)
    if len(js) <= 2:
        return js
    j0 = js[0]
    plus, minus = [], []
    for j in js[1:]:
        s = orient(j0, j)
        if s == 0:
            raise NonGeneric(f"directions to {j0} and {j} coincide around {center}")
        (plus if s > 0 else minus).append(j)

    def half_sort(h):
        # within a half-turn the pairwise sign is a strict order
        out = []
        for j in h:
            k = 0
            while k < len(out):
                s = orient(out[k], j)
                if s == 0:
                    raise NonGeneric(f"directions to {out[k]} and {j} coincide around {center}")
                if s < 0:
                    break
                k += 1
            out.insert(k, j)
        return out

    return [j0] + half_sort(plus) + half_sort(minus)


def cyclic_order_at(source, center: int, neighbors: Sequence[int], witness: int) -> list:
    """Counterclockwise order of the projected directions at ``pi(x_center)``.

    Seen from outside the sphere around the witness; only the signs
    ``chi(x_0, x_center, x_j, x_k)`` are used.  ``source`` is a
    :class:`StrongGeometry`, a :class:`~strongeom.chirotope.Chirotope` or a
    :class:`PointConfig`.
    """
    if isinstance(source, StrongGeometry):
        chi = source.base
    elif isinstance(source, PointConfig):
        chi = affine_chirotope(source)
    else:
        chi = source
    return cyclic_order_from_signs(center, neighbors, lambda j, k: chi((witness, center, j, k)))


def cyclic_order_geometric(points: Sequence, center: int, neighbors: Sequence[int], witness: int) -> list:
    """Same order by exact angular sort in the tangent plane at ``pi(x_center)``."""
    r = sub(points[center], points[witness])
    axis = min(range(3), key=lambda i: abs(r[i]))
    e = tuple(int(i == axis) for i in range(3))
    b1 = cross(r, e)
    b2 = cross(r, b1)
    # (b1, b2, r) must be positive so that angles increase counterclockwise seen from outside
    if det_sign([b1, b2, r]) < 0:
        b2 = tuple(-x for x in b2)

    def coords(j):
        t = sub(points[j], points[center])
        return dot(t, b1), dot(t, b2)

    js = sorted(neighbors)
    ref = coords(js[0])

    def rel(j):
        # direction of j in a frame where the reference points along +x
        x, y = coords(j)
        return x * ref[0] + y * ref[1], ref[0] * y - ref[1] * x

    def half(j):
        rx, ry = rel(j)
        if ry == 0 and rx > 0:
            raise NonGeneric(f"directions to {js[0]} and {j} coincide around {center}")
        return 0 if ry > 0 else 1

    def cmp(j, k):
        if half(j) != half(k):
            return half(j) - half(k)
        (xj, yj), (xk, yk) = rel(j), rel(k)
        c = sign(xj * yk - yj * xk)
        if c == 0:
            raise NonGeneric(f"directions to {j} and {k} coincide around {center}")
        return -c

    return [js[0]] + sorted(js[1:], key=cmp_to_key(cmp))


def _graph_adjacent(s, t) -> bool:
    return bool(set(s) & set(t))


def _extract_graphoid(shadow, order_fn, G: AbstractGraph, witness: int) -> GaussDiagram:
    edges = G.labeled_edges()
    names = {e: f"e{i + 1}" for i, e in enumerate(edges)}
    live = [e for e in edges if witness not in e]
    seqs = shadow_sequences(shadow, live, _graph_adjacent)
    rows = emit_entries(seqs, live)
    vname = G.vertices
    vertices = []
    for v in range(len(vname)):
        if v == witness:
            continue
        nbrs = [b if a == v else a for a, b in live if v in (a, b)]
        ordered = order_fn(v, nbrs) if nbrs else []
        rot = tuple(names[tuple(sorted((v, j)))] for j in ordered)
        vertices.append((vname[v], rot))
    gedges = tuple(GraphEdge(names[e], vname[e[0]], vname[e[1]], rows[e]) for e in live)
    dist = tuple(vname[b if a == witness else a] for a, b in edges if witness in (a, b))
    return validate(GaussDiagram(GRAPHOID, (), tuple(vertices), gedges, dist))


def extract_graphoid(SG: StrongGeometry, G: AbstractGraph, x0) -> GaussDiagram:
    """Graphoid Gauss diagram from strong-geometry lookups only."""
    w = G.label(x0)
    return _extract_graphoid(CombinatorialShadow(SG, w),
                             lambda v, nb: cyclic_order_at(SG, v, nb, w), G, w)


def extract_graphoid_geometric(R: LinearSpatialGraph, x0) -> GaussDiagram:
    """Graphoid Gauss diagram by exact projection of the embedded edges."""
    w = R.graph.label(x0)
    pts = R.config.coords
    return _extract_graphoid(GeometricShadow(pts, w),
                             lambda v, nb: cyclic_order_geometric(pts, v, nb, w), R.graph, w)


def validate_graph(R: LinearSpatialGraph) -> None:
    bad = general_position_witness(R.config)
    if bad is not None:
        raise DegenerateConfiguration(f"points {bad} are coplanar", bad)


@dataclass
class EquivalenceVerdict:
    certified: bool
    diagrams_equal: Optional[bool]
    witness: Optional[tuple] = None


def spatial_graphs_equivalent(A: LinearSpatialGraph, B: LinearSpatialGraph, bijection: Optional[dict] = None,
                              x0=None) -> EquivalenceVerdict:
    """Certify equivalence when the strong geometries match under ``bijection``.

    ``bijection`` maps vertex names of ``A`` to vertex names of ``B``
    (identity by default).  A negative answer only means the sufficient
    condition failed.  On success the graphoid diagrams projected from
    matching vertices are compared as a consistency check.
    """
    bij = bijection or {v: v for v in A.graph.vertices}
    if {frozenset((bij[u], bij[v])) for u, v in A.graph.edges} != {frozenset(e) for e in B.graph.edges}:
        return EquivalenceVerdict(False, None, ("graph", None))
    perm = [B.graph.label(bij[v]) for v in A.graph.vertices]
    cmp = compare_strong_geometries(strong_geometry(A.config, eager=False), strong_geometry(B.config, eager=False), perm)
    if not cmp.isomorphic:
        return EquivalenceVerdict(False, None, cmp.witness)
    x0 = A.graph.vertices[0] if x0 is None else x0
    # bring B into A's labeling so edge names line up
    Bre = LinearSpatialGraph(A.graph, PointConfig(tuple(B.point(bij[v]) for v in A.graph.vertices), AFFINE, 3))
    ga = extract_graphoid_geometric(A, x0)
    gb = extract_graphoid_geometric(Bre, x0)
    return EquivalenceVerdict(True, diagrams_equal(ga, gb))


# graph files ------------------------------------------------------------------

_NAME = re.compile(r"[a-z0-9_]+")
_RAT = re.compile(r"-?\d+(/\d+)?")


def parse_graph(text: str) -> LinearSpatialGraph:
    """``graph`` / ``vertex NAME: x y z`` / ``edge NAME NAME``, ``#`` comments."""
    lines = []
    for i, raw in enumerate(text.split("\n")):
        line = raw.split("#", 1)[0].rstrip()
        if line.strip():
            lines.append((i + 1, line))
    if not lines or lines[0][1] != "graph":
        raise PointFileError(lines[0][0] if lines else 1, "expected 'graph'")
    names, pts, edges = [], {}, []
    for lineno, line in lines[1:]:
        if line.startswith("vertex "):
            name, colon, rest = line[7:].partition(":")
            if not _NAME.fullmatch(name) or not colon:
                raise PointFileError(lineno, "expected 'vertex NAME: x y z'")
            toks = rest.split()
            if len(toks) != 3 or not all(_RAT.fullmatch(t) for t in toks):
                raise PointFileError(lineno, "expected three rational coordinates")
            if name in pts:
                raise PointFileError(lineno, f"repeated vertex {name}")
            names.append(name)
            pts[name] = tuple(Fraction(t) for t in toks)
        elif line.startswith("edge "):
            toks = line[5:].split(" ")
            if len(toks) != 2 or not all(_NAME.fullmatch(t) for t in toks):
                raise PointFileError(lineno, "expected 'edge NAME NAME'")
            edges.append(tuple(toks))
        else:
            raise PointFileError(lineno, "expected 'vertex' or 'edge'")
    try:
        G = AbstractGraph(tuple(names), tuple(edges))
    except (ValueError, KeyError) as exc:
        raise PointFileError(lines[-1][0], str(exc)) from exc
    return LinearSpatialGraph.from_points(G, pts)
