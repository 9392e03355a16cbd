"""Independent reference computations used only by the tests.

None of these share code with the package: determinants by Laplace
expansion, convex-hull membership by explicit barycentric solves, knot
diagrams by orthogonal projection, and knot determinants from Fox
colorings.
"""

from fractions import Fraction
from itertools import combinations


def sgn(x):
    return (x > 0) - (x < 0)


def laplace_det(m):
    m = [[Fraction(x) for x in row] for row in m]
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = Fraction(0)
    for j in range(n):
        if m[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        total += (-1) ** j * m[0][j] * laplace_det(minor)
    return total


def solve_exact(a, b):
    """Gauss-Jordan; returns None when singular."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(a, b)]
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            return None
        m[c], m[p] = m[p], m[c]
        m[c] = [x / m[c][c] for x in m[c]]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [row[n] for row in m]


def affine_dependence(points):
    """Nonzero ``lam`` with ``sum lam_i = 0`` and ``sum lam_i p_i = 0`` for ``d+2`` points in ``R^d``.

    Fixes the last coefficient to 1 (or -1 if needed) and solves; returns
    None if the points do not carry a one-dimensional dependence of that
    shape.
    """
    d = len(points[0])
    k = len(points)
    rows = [[Fraction(1)] * (k - 1)] + [[Fraction(p[i]) for p in points[:-1]] for i in range(d)]
    rhs = [Fraction(-1)] + [Fraction(-points[-1][i]) for i in range(d)]
    if len(rows) != k - 1:
        return None
    sol = solve_exact(rows, rhs)
    if sol is None:
        return None
    return sol + [Fraction(1)]


def radon_partition(points, labels):
    lam = affine_dependence(points)
    if lam is None:
        return None
    pos = frozenset(l for l, c in zip(labels, lam) if c > 0)
    neg = frozenset(l for l, c in zip(labels, lam) if c < 0)
    return {pos, neg}


def in_triangle_2d(p, a, b, c):
    s = [sgn((b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])),
         sgn((c[0] - b[0]) * (p[1] - b[1]) - (c[1] - b[1]) * (p[0] - b[0])),
         sgn((a[0] - c[0]) * (p[1] - c[1]) - (a[1] - c[1]) * (p[0] - c[0]))]
    return all(x > 0 for x in s) or all(x < 0 for x in s)


def segments_cross_2d(a, b, c, d):
    def o(p, q, r):
        return sgn((q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]))

    return o(a, b, c) * o(a, b, d) < 0 and o(c, d, a) * o(c, d, b) < 0


def segment_pierces_triangle(s0, s1, t0, t1, t2):
    """Exact test for the open segment meeting the open triangle in R^3."""
    # s0 + s (s1 - s0) = t0 + u (t1 - t0) + v (t2 - t0)
    cols = [[s1[i] - s0[i], -(t1[i] - t0[i]), -(t2[i] - t0[i])] for i in range(3)]
    rhs = [t0[i] - s0[i] for i in range(3)]
    sol = solve_exact(cols, rhs)
    if sol is None:
        return False
    s, u, v = sol
    return 0 < s < 1 and u > 0 and v > 0 and u + v < 1


# knot diagrams by orthogonal projection --------------------------------------


class Degenerate(Exception):
    pass


def orthogonal_gauss(points, shear=(Fraction(1, 7), Fraction(2, 11))):
    """Closed Gauss code ``[(id, 'O'|'U', sign)]`` of the projection along ``(a, b, 1)``."""
    a, b = shear
    flat = [(Fraction(p[0]) - a * p[2], Fraction(p[1]) - b * p[2]) for p in points]
    n = len(points)
    hits = {i: [] for i in range(n)}
    cid = 0
    for i, j in combinations(range(n), 2):
        if (j - i) % n in (1, n - 1):
            continue
        p, q = flat[i], flat[(i + 1) % n]
        r, s = flat[j], flat[(j + 1) % n]
        den = (q[0] - p[0]) * (s[1] - r[1]) - (q[1] - p[1]) * (s[0] - r[0])
        if den == 0:
            raise Degenerate("parallel projected segments")
        t = ((r[0] - p[0]) * (s[1] - r[1]) - (r[1] - p[1]) * (s[0] - r[0])) / den
        u = ((r[0] - p[0]) * (q[1] - p[1]) - (r[1] - p[1]) * (q[0] - p[0])) / den
        if t in (0, 1) or u in (0, 1):
            raise Degenerate("vertex on a projected segment")
        if not (0 < t < 1 and 0 < u < 1):
            continue
        P, Q = points[i], points[(i + 1) % n]
        R, S = points[j], points[(j + 1) % n]
        zi = Fraction(P[2]) + t * (Q[2] - P[2])
        zj = Fraction(R[2]) + u * (S[2] - R[2])
        if zi == zj:
            raise Degenerate("segments meet")
        di = (q[0] - p[0], q[1] - p[1])
        dj = (s[0] - r[0], s[1] - r[1])
        o, un = (di, dj) if zi > zj else (dj, di)
        sign = sgn(o[0] * un[1] - o[1] * un[0])
        cid += 1
        hits[i].append((t, cid, "O" if zi > zj else "U", sign))
        hits[j].append((u, cid, "O" if zj > zi else "U", sign))
    code = []
    for i in range(n):
        for _, c, s, h in sorted(hits[i]):
            code.append((c, s, h))
    return code


def knot_determinant(code):
    """|Alexander polynomial at -1| from Fox colorings of a closed diagram."""
    if not code:
        return 1
    m = len(code)
    # arcs run between consecutive undercrossings
    arc_at = []
    arc = 0
    first_u = next(k for k, e in enumerate(code) if e[1] == "U")
    rolled = code[first_u:] + code[:first_u]
    for k, (c, s, h) in enumerate(rolled):
        if s == "U" and k > 0:
            arc += 1
        arc_at.append(arc)
    narcs = arc + 1
    over_arc, under_in, under_out = {}, {}, {}
    for k, (c, s, h) in enumerate(rolled):
        if s == "O":
            over_arc[c] = arc_at[k]
        else:
            under_out[c] = arc_at[k]
            under_in[c] = arc_at[k - 1] if k > 0 else arc_at[-1]
    crossings = sorted(over_arc)
    rows = []
    for c in crossings:
        row = [0] * narcs
        row[over_arc[c]] += 2
        row[under_in[c]] -= 1
        row[under_out[c]] -= 1
        rows.append(row)
    minor = [r[1:] for r in rows[1:]]
    if not minor:
        return 1
    return abs(laplace_det(minor))


def writhe(code):
    return sum(h for _, s, h in code if s == "O")
