"""Radial projection of polygonal knots from a vertex, and their knotoid Gauss codes.

The knot ``x_0, ..., x_{n-1}`` is projected from ``x_0`` onto a sphere
centered there, viewed from outside.  The two edges at ``x_0`` collapse to
the points ``pi(x_1)`` and ``pi(x_{n-1})``, which become the legs of a
knotoid; arc ``i`` is the edge ``[x_i, x_{i+1}]`` for ``1 <= i <= n-2``.

Conventions:

* arcs ``s`` and ``t`` cross iff the Radon partition of ``{x_0} + s + t`` is
  ``({x_0} + s) | t`` or ``({x_0} + t) | s``; in the first case ``s`` is
  over, i.e. farther from ``x_0`` and so nearer the viewer.
* the sign of a crossing is its handedness,
  ``chi(over_tail, over_head, x_0, under_head)``; ``+1`` means the under
  strand runs counterclockwise of the over strand.
* along arc ``e`` the crossing with ``g`` comes after the one with ``f`` iff
  ``sigma(e,f) sigma(e,g) W(e,f,g) = +1``, where
  ``sigma(e,f) = chi(e_tail, e_head, x_0, f_head)`` and ``W`` is the wedge
  sign of the three arcs witnessed by ``x_0``.

Two independent implementations produce the code: one that only looks up
signs of a strong geometry and one that intersects the projected arcs with
exact rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from itertools import combinations
from typing import Optional, Sequence

from .chirotope import AFFINE, PointConfig, affine_chirotope, circuit_of
from .errors import (
    ConsecutiveArcs,
    DegenerateConfiguration,
    NoCrossing,
    NonGenericShadow,
    ProjectionCenterArc,
    TooFewPoints,
)
from .gauss import KNOTOID, Entry, GaussDiagram, validate
from .predicates import cross, det_sign, dot, sign, sub
from .rng import SplitMix64
from .wedge import StrongGeometry, first_nonzero_complement, strong_geometry, witnessed_sign_from_wedge

Segment = tuple  # (tail label, head label)


@dataclass(frozen=True)
class PolygonalKnot:
    config: PointConfig

    def __post_init__(self):
        if self.config.mode != AFFINE or self.config.dim != 3:
            raise ValueError("a polygonal knot needs affine points in R^3")
        if self.config.n < 4:
            raise TooFewPoints("a polygonal knot needs at least 4 vertices")

    @classmethod
    def from_points(cls, points) -> "PolygonalKnot":
        return cls(PointConfig(tuple(points), AFFINE, 3))

    @property
    def n(self) -> int:
        return self.config.n

    @property
    def points(self) -> tuple:
        return self.config.coords

    def arc(self, i: int) -> Segment:
        return (i, (i + 1) % self.n)

    def arcs(self) -> list:
        """Arcs that survive the projection, in walking order."""
        return [self.arc(i) for i in range(1, self.n - 1)]

    def mapped(self, f) -> "PolygonalKnot":
        return PolygonalKnot(self.config.mapped(f))


@dataclass(frozen=True)
class ArcCrossing:
    over: Segment
    under: Segment
    sign: int


# sign oracles -----------------------------------------------------------------


class CombinatorialShadow:
    """Shadow predicates answered from strong-geometry lookups only."""

    def __init__(self, SG: StrongGeometry, witness: int = 0):
        self.SG = SG
        self.w = witness
        self.J = first_nonzero_complement(SG.base, witness)

    def _chi(self, *t) -> int:
        return self.SG.base(t)

    def crossing(self, s: Segment, t: Segment) -> Optional[ArcCrossing]:
        w = self.w
        c = circuit_of(self.SG.base, {w, *s, *t})
        parts = c.parts()
        if parts == {frozenset((w,) + s), frozenset(t)}:
            o, u = s, t
        elif parts == {frozenset((w,) + t), frozenset(s)}:
            o, u = t, s
        else:
            return None
        h = self._chi(o[0], o[1], w, u[1])
        if h == 0:
            raise DegenerateConfiguration("zero crossing sign", (o[0], o[1], w, u[1]))
        return ArcCrossing(o, u, h)

    def sigma(self, e: Segment, f: Segment) -> int:
        return self._chi(e[0], e[1], self.w, f[1])

    def witnessed(self, e: Segment, f: Segment, g: Segment) -> int:
        return witnessed_sign_from_wedge(self.SG, self.w, (e, f, g), self.J)

    def order(self, e: Segment, others: Sequence[Segment]) -> list:
        def cmp(f, g):
            v = self.sigma(e, f) * self.sigma(e, g) * self.witnessed(e, f, g)
            if v == 0:
                raise NonGenericShadow(f"crossings of {e} with {f} and {g} coincide")
            return -1 if v > 0 else 1

        return sorted(others, key=cmp_to_key(cmp))


@dataclass(frozen=True)
class RayHit:
    ray: tuple
    dist: dict  # segment -> distance parameter along the ray
    param: dict  # segment -> parameter along the segment, 0 at tail


def _on_arc(a, b, n, r) -> int:
    """+1 if ``r`` is strictly inside the minor arc from ``a`` to ``b`` (normal ``n``), 0 on its boundary."""
    s1 = sign(dot(cross(a, r), n))
    s2 = sign(dot(cross(r, b), n))
    if s1 > 0 and s2 > 0:
        return 1
    if s1 >= 0 and s2 >= 0:
        return 0
    return -1


def _ray_point(a, b, r):
    """Point ``a + u (b - a)`` on the line through ``r``: returns ``(u, t)`` with point ``= t r``."""
    ba = sub(b, a)
    w = cross(ba, r)
    u = -Fraction(dot(cross(a, r), w)) / dot(w, w)
    p = tuple(x + u * y for x, y in zip(a, ba))
    t = Fraction(dot(p, r)) / dot(r, r)
    return u, t


class GeometricShadow:
    """Shadow predicates computed from exact coordinates (the oracle path)."""

    def __init__(self, points: Sequence[Sequence], witness: int = 0):
        self.w = witness
        c0 = points[witness]
        self.rel = {i: sub(p, c0) for i, p in enumerate(points)}
        self.hits: dict = {}

    def _hit(self, s: Segment, t: Segment) -> Optional[RayHit]:
        key = (s, t)
        if key in self.hits:
            return self.hits[key]
        a, b = self.rel[s[0]], self.rel[s[1]]
        c, e = self.rel[t[0]], self.rel[t[1]]
        n1, n2 = cross(a, b), cross(c, e)
        L = cross(n1, n2)
        if not any(L):
            raise NonGenericShadow(f"arcs {s} and {t} lie on one great circle")
        hit = None
        for r in (L, tuple(-x for x in L)):
            on_s, on_t = _on_arc(a, b, n1, r), _on_arc(c, e, n2, r)
            if on_s > 0 and on_t > 0:
                us, ts = _ray_point(a, b, r)
                ut, tt = _ray_point(c, e, r)
                if ts == tt:
                    raise NonGenericShadow(f"arcs {s} and {t} meet in space")
                hit = RayHit(r, {s: ts, t: tt}, {s: us, t: ut})
            elif on_s >= 0 and on_t >= 0:
                raise NonGenericShadow(f"arcs {s} and {t} touch at an endpoint of the shadow")
        self.hits[key] = self.hits[(t, s)] = hit
        return hit

    def crossing(self, s: Segment, t: Segment) -> Optional[ArcCrossing]:
        hit = self._hit(s, t)
        if hit is None:
            return None
        o, u = (s, t) if hit.dist[s] > hit.dist[t] else (t, s)
        r = hit.ray
        no = cross(self.rel[o[0]], self.rel[o[1]])
        nu = cross(self.rel[u[0]], self.rel[u[1]])
        h = det_sign([cross(no, r), cross(nu, r), r])
        if h == 0:
            raise NonGenericShadow(f"arcs {s} and {t} are tangent")
        return ArcCrossing(o, u, h)

    def order(self, e: Segment, others: Sequence[Segment]) -> list:
        keyed = sorted((self._hit(e, f).param[e], f) for f in others)
        for (p, f), (q, g) in zip(keyed, keyed[1:]):
            if p == q:
                raise NonGenericShadow(f"crossings of {e} with {f} and {g} coincide")
        return [f for _, f in keyed]


# extraction -------------------------------------------------------------------


def _check_pair(K: PolygonalKnot, i: int, j: int):
    n = K.n
    for a in (i, j):
        if a % n in (0, n - 1):
            raise ProjectionCenterArc(f"arc {a} is incident to x_0")
    if abs(i - j) <= 1:
        raise ConsecutiveArcs(f"arcs {i} and {j} share an endpoint")


def crossing_exists(source, i: int, j: int, n: Optional[int] = None) -> Optional[tuple]:
    """``(over, under)`` arc indices if arcs ``i`` and ``j`` cross, else None.

    ``source`` is a :class:`PolygonalKnot` or a rank-4 :class:`StrongGeometry`.
    """
    K = source if isinstance(source, PolygonalKnot) else None
    n = K.n if K else (n or source.n)
    _check_pair(K or _Shape(n), i, j)
    sh = CombinatorialShadow(strong_geometry(K.config) if K else source)
    c = sh.crossing((i, i + 1), (j, j + 1))
    if c is None:
        return None
    return c.over[0], c.under[0]


class _Shape:
    def __init__(self, n):
        self.n = n


def crossing_sign(source, i: int, j: int) -> int:
    K = source if isinstance(source, PolygonalKnot) else None
    _check_pair(K or _Shape(source.n), i, j)
    sh = CombinatorialShadow(strong_geometry(K.config) if K else source)
    c = sh.crossing((i, i + 1), (j, j + 1))
    if c is None:
        raise NoCrossing(f"arcs {i} and {j} do not cross")
    return c.sign


def order_crossings(source, i: int, others: Sequence[int]) -> list:
    """Arc indices crossing arc ``i``, sorted by the position of the crossing along ``i``."""
    K = source if isinstance(source, PolygonalKnot) else None
    sh = CombinatorialShadow(strong_geometry(K.config) if K else source)
    return [f[0] for f in sh.order((i, i + 1), [(j, j + 1) for j in others])]


def shadow_sequences(shadow, segments: Sequence[Segment], adjacent) -> dict:
    """For each segment, its crossings in order as ``(ArcCrossing, other segment)`` pairs."""
    crossings = {s: [] for s in segments}
    for s, t in combinations(segments, 2):
        if adjacent(s, t):
            continue
        c = shadow.crossing(s, t)
        if c is not None:
            crossings[s].append((t, c))
            crossings[t].append((s, c))
    out = {}
    for s in segments:
        by_other = dict(crossings[s])
        order = shadow.order(s, list(by_other)) if len(by_other) > 1 else list(by_other)
        out[s] = [(by_other[t], t) for t in order]
    return out


def emit_entries(sequences: dict, segments: Sequence[Segment], ids: Optional[dict] = None) -> dict:
    """Gauss entries per segment, crossing ids numbered by first encounter."""
    ids = {} if ids is None else ids
    out = {}
    for s in segments:
        row = []
        for c, t in sequences[s]:
            key = frozenset((s, t))
            if key not in ids:
                ids[key] = len(ids) + 1
            row.append(Entry(ids[key], "O" if c.over == s else "U", c.sign))
        out[s] = tuple(row)
    return out


def _knot_adjacent(s, t) -> bool:
    return bool(set(s) & set(t))


def _extract(shadow, n: int) -> GaussDiagram:
    arcs = [(i, i + 1) for i in range(1, n - 1)]
    seqs = shadow_sequences(shadow, arcs, _knot_adjacent)
    rows = emit_entries(seqs, arcs)
    return validate(GaussDiagram(KNOTOID, tuple(e for a in arcs for e in rows[a])))


def extract_gauss_combinatorial(SG: StrongGeometry, n: Optional[int] = None) -> GaussDiagram:
    """Knotoid Gauss code from strong-geometry sign lookups alone (witness label 0)."""
    n = SG.n if n is None else n
    if SG.rank != 4:
        raise ValueError("expected the strong geometry of affine points in R^3")
    return _extract(CombinatorialShadow(SG, 0), n)


def extract_gauss_geometric(K: PolygonalKnot) -> GaussDiagram:
    """Knotoid Gauss code by exact intersection of the projected arcs."""
    return _extract(GeometricShadow(K.points, 0), K.n)


def general_position_witness(X: PointConfig) -> Optional[tuple]:
    for t, s in affine_chirotope(X).items():
        if s == 0:
            return t
    return None


@dataclass
class InputReport:
    tuples_checked: int
    crossings: int


def validate_input(K: PolygonalKnot) -> InputReport:
    """General position of the vertices plus genericity of the shadow."""
    bad = general_position_witness(K.config)
    if bad is not None:
        raise DegenerateConfiguration(f"points {bad} are coplanar", bad)
    sh = GeometricShadow(K.points, 0)
    try:
        seqs = shadow_sequences(sh, K.arcs(), _knot_adjacent)
    except NonGenericShadow as exc:
        raise DegenerateConfiguration(str(exc)) from exc
    total = sum(len(v) for v in seqs.values()) // 2
    n = K.n
    return InputReport(n * (n - 1) * (n - 2) * (n - 3) // 24, total)


def random_knot(rng: SplitMix64, n: int, bound: int = 30, max_tries: int = 1000) -> PolygonalKnot:
    """Random generic polygonal knot with integer vertices in ``[-bound, bound]^3``."""
    for _ in range(max_tries):
        pts = tuple(tuple(rng.randint(-bound, bound) for _ in range(3)) for _ in range(n))
        K = PolygonalKnot.from_points(pts)
        try:
            validate_input(K)
        except DegenerateConfiguration:
            continue
        return K
    raise RuntimeError("no generic knot found")
