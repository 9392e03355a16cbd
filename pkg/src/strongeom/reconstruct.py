"""Faces of the diagram encoded by a Gauss diagram (valid travels) and realizability.

The carrier (circle, segment or graph edges) is cut at every crossing mark
into pieces.  A dart is a piece with a direction.  Every node of the
diagram (crossing, graph vertex, knotoid endpoint) carries the
counterclockwise cyclic list of the piece-ends meeting there:

* positive crossing: ``O_out, U_out, O_in, U_in``
* negative crossing: ``O_out, U_in, O_in, U_out``
* graph vertex: the ends of its edges in the given rotation
* knotoid endpoint: its single piece-end

A travel arriving at a node through a piece-end leaves through the
clockwise-previous one in that list.  At a crossing this turns left onto
the other strand; at an endpoint it goes back the way it came.  The orbits
are the faces.  Unrolled over the port of arrival this is the table

    sign +:  O_out -> U_in,  U_out -> O_out,  O_in -> U_out,  U_in -> O_in
    sign -:  O_out -> U_out, U_in -> O_out,  O_in -> U_in,  U_out -> O_in
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Optional

from .errors import MalformedDiagram
from .gauss import GRAPHOID, KNOT, KNOTOID, GaussDiagram

START, END = "start", "end"


@dataclass(frozen=True)
class Node:
    kind: str  # "crossing", "vertex", "endpoint" or "basepoint"
    name: object
    sign: int = 0
    distinguished: bool = False


@dataclass
class Carrier:
    """Pieces, nodes and the cyclic port lists that drive the travels."""

    pieces: list = field(default_factory=list)  # piece label, in carrier order
    rotation: dict = field(default_factory=dict)  # Node -> [port, ...] counterclockwise
    port_node: dict = field(default_factory=dict)  # port -> Node
    port_info: dict = field(default_factory=dict)  # port -> ("O"|"U", "in"|"out") at crossings


def _crossing_rotation(sign: int, o_in, o_out, u_in, u_out) -> list:
    if sign > 0:
        return [o_out, u_out, o_in, u_in]
    return [o_out, u_in, o_in, u_out]


def _add_crossings(car: Carrier, marks: dict, signs: dict):
    """``marks[id][strand] = (port arriving, port leaving)``."""
    for ident, by in marks.items():
        (o_in, o_out), (u_in, u_out) = by["O"], by["U"]
        node = Node("crossing", ident, signs[ident])
        car.rotation[node] = _crossing_rotation(signs[ident], o_in, o_out, u_in, u_out)
        for p, info in ((o_in, ("O", "in")), (o_out, ("O", "out")), (u_in, ("U", "in")), (u_out, ("U", "out"))):
            car.port_node[p] = node
            car.port_info[p] = info


def build_carrier(G: GaussDiagram) -> Carrier:
    car = Carrier()
    marks: dict = defaultdict(dict)
    signs = {}

    def chain(label, entries, closed: bool):
        m = len(entries)
        npieces = m if closed else m + 1
        pieces = [(label, k) for k in range(npieces)]
        car.pieces.extend(pieces)
        for k, e in enumerate(entries):
            if closed:
                arrive, leave = (pieces[(k - 1) % m], END), (pieces[k], START)
            else:
                arrive, leave = (pieces[k], END), (pieces[k + 1], START)
            marks[e.ident][e.strand] = (arrive, leave)
            signs[e.ident] = e.sign
        return pieces

    if G.kind == KNOT:
        pieces = chain("k", list(G.entries), True)
        if not G.entries:
            pieces = [("k", 0)]
            car.pieces = pieces
            node = Node("basepoint", 0)
            ports = [(pieces[0], START), (pieces[0], END)]
            car.rotation[node] = ports
            for p in ports:
                car.port_node[p] = node
    elif G.kind == KNOTOID:
        pieces = chain("k", list(G.entries), False)
        for name, port in (("A", (pieces[0], START)), ("B", (pieces[-1], END))):
            node = Node("endpoint", name, distinguished=True)
            car.rotation[node] = [port]
            car.port_node[port] = node
    elif G.kind == GRAPHOID:
        ends = {}
        for ed in G.edges:
            pieces = chain(ed.name, list(ed.entries), False)
            ends[ed.name] = (ed.tail, (pieces[0], START), ed.head, (pieces[-1], END))
        dist = set(G.distinguished)
        for v, rot in G.vertices:
            node = Node("vertex", v, distinguished=v in dist)
            ports = []
            for e in rot:
                tail, p_start, head, p_end = ends[e]
                ports.append(p_start if tail == v else p_end)
            car.rotation[node] = ports
            for p in ports:
                car.port_node[p] = node
    else:
        raise MalformedDiagram(f"unknown kind {G.kind}")
    _add_crossings(car, marks, signs)
    return car


def _arrival_port(dart):
    piece, d = dart
    return (piece, END) if d > 0 else (piece, START)


def _leaving_dart(port):
    piece, end = port
    return (piece, 1) if end == START else (piece, -1)


def next_dart(car: Carrier, dart):
    port = _arrival_port(dart)
    rot = car.rotation[car.port_node[port]]
    return _leaving_dart(rot[rot.index(port) - 1])


@dataclass
class PlanarMapData:
    kind: str
    V: int
    E: int
    faces: list  # each a list of darts (piece, +1 | -1)
    adjacency: dict  # piece -> (face on its + dart, face on its - dart)
    components: int
    carrier: Carrier = field(repr=False, default=None)

    @property
    def F(self) -> int:
        return len(self.faces)

    @property
    def euler(self) -> int:
        return self.V - self.E + self.F

    def face_of(self) -> dict:
        return {d: i for i, f in enumerate(self.faces) for d in f}

    def dump(self) -> str:
        lines = [f"V={self.V} E={self.E} F={self.F} Euler={self.euler}"]
        for i, f in enumerate(self.faces):
            lines.append(f"face {i}: " + " ".join(_dart_str(d) for d in f))
        for p, (a, b) in self.adjacency.items():
            lines.append(f"piece {_piece_str(p)}: faces {a} {b}")
        return "\n".join(lines)


def _piece_str(p) -> str:
    return f"{p[0]}.{p[1]}"


def _dart_str(d) -> str:
    return _piece_str(d[0]) + ("+" if d[1] > 0 else "-")


def _components(car: Carrier) -> int:
    parent = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for node in car.rotation:
        find(node)
    for p in car.pieces:
        a = car.port_node[(p, START)]
        b = car.port_node[(p, END)]
        parent[find(a)] = find(b)
    return len({find(x) for x in car.rotation})


def faces(G: GaussDiagram) -> PlanarMapData:
    car = build_carrier(G)
    seen = set()
    walks = []
    for p in car.pieces:
        for d in (1, -1):
            start = (p, d)
            if start in seen:
                continue
            walk = []
            x = start
            while True:
                if x in seen:
                    raise MalformedDiagram(f"travel from {_dart_str(start)} does not close")
                seen.add(x)
                walk.append(x)
                x = next_dart(car, x)
                if x == start:
                    break
            walks.append(walk)
    # an isolated vertex sits inside a face of its own
    walks.extend([] for node, ports in car.rotation.items() if not ports)
    where = {d: i for i, f in enumerate(walks) for d in f}
    adjacency = {p: (where[(p, 1)], where[(p, -1)]) for p in car.pieces}
    return PlanarMapData(G.kind, len(car.rotation), len(car.pieces), walks, adjacency, _components(car), car)


@dataclass
class Verdict:
    realizable: bool
    V: int
    E: int
    F: int
    components: int
    reason: Optional[str] = None

    @property
    def euler(self) -> int:
        return self.V - self.E + self.F


def check_realizable(G: GaussDiagram) -> Verdict:
    """Realizable on the sphere iff ``V - E + F = 2`` per component and every dart is used once."""
    pm = faces(G)
    used = sum(len(f) for f in pm.faces)
    if used != 2 * pm.E:
        return Verdict(False, pm.V, pm.E, pm.F, pm.components, f"faces use {used} darts, expected {2 * pm.E}")
    if pm.euler != 2 * pm.components:
        return Verdict(False, pm.V, pm.E, pm.F, pm.components,
                       f"Euler characteristic {pm.euler} != {2 * pm.components}")
    return Verdict(True, pm.V, pm.E, pm.F, pm.components)


# isomorphism ------------------------------------------------------------------


def _decoration(car: Carrier, dart) -> tuple:
    port = _arrival_port(dart)
    node = car.port_node[port]
    info = car.port_info.get(port, ())
    return ("dart", dart[1], node.kind, node.sign, node.distinguished, len(car.rotation[node])) + info


def _component_codes(pm: PlanarMapData) -> list:
    car = pm.carrier
    darts = [(p, d) for p in car.pieces for d in (1, -1)]
    nxt = {d: next_dart(car, d) for d in darts}
    deco = {d: _decoration(car, d) for d in darts}

    def rev(d):
        return (d[0], -d[1])

    def code_from(root):
        num = {root: 0}
        order = [root]
        i = 0
        while i < len(order):
            d = order[i]
            for e in (nxt[d], rev(d)):
                if e not in num:
                    num[e] = len(order)
                    order.append(e)
            i += 1
        return tuple((num[nxt[d]], num[rev(d)], deco[d]) for d in order), frozenset(order)

    codes = []
    done: set = set()
    for d in darts:
        if d in done:
            continue
        _, comp = code_from(d)
        done |= comp
        codes.append(min(code_from(r)[0] for r in comp))
    for node, ports in car.rotation.items():
        if not ports:
            codes.append(((0, 0, ("isolated", node.distinguished)),))
    return sorted(codes)


def diagram_isomorphic(A, B) -> bool:
    """Orientation-preserving isomorphism of decorated planar maps.

    Accepts :class:`PlanarMapData` or :class:`GaussDiagram` arguments.
    Decorations are the travel direction along the carrier, crossing signs,
    over/under and in/out at each crossing port, node degrees and
    distinguished vertices.
    """
    pa = A if isinstance(A, PlanarMapData) else faces(A)
    pb = B if isinstance(B, PlanarMapData) else faces(B)
    if (pa.V, pa.E, pa.F) != (pb.V, pb.E, pb.F):
        return False
    return _component_codes(pa) == _component_codes(pb)
