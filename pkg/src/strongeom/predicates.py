"""Exact rational sign predicates.

Everything here works on sequences of ``int`` or ``fractions.Fraction``;
no floating point is involved anywhere.  Determinants are evaluated by
fraction-free (Bareiss) elimination after clearing denominators row by row.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import lcm
from typing import Sequence, Union

import numpy as np

from .errors import DimensionMismatch, ZeroWitness

Scalar = Union[int, Fraction]
Vec = tuple  # tuple of Scalar


def sign(x) -> int:
    return (x > 0) - (x < 0)


def as_vec(v) -> tuple:
    """Coerce to a tuple of exact scalars (ints stay ints)."""
    out = []
    for c in v:
        if isinstance(c, (int, Fraction)):
            out.append(c)
        elif isinstance(c, str):
            out.append(Fraction(c))
        else:
            raise TypeError(f"inexact coordinate {c!r}")
    return tuple(out)


def integer_row(row: Sequence[Scalar]) -> tuple[tuple[int, ...], int]:
    """Scale ``row`` by the positive lcm of its denominators.

    Returns the integer row and the scale factor.
    """
    scale = 1
    for c in row:
        if isinstance(c, Fraction):
            scale = lcm(scale, c.denominator)
    if scale == 1:
        return tuple(int(c) for c in row), 1
    return tuple(int(c * scale) for c in row), scale


def _bareiss(m: list[list[int]]) -> int:
    n = len(m)
    s = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    s = -s
                    break
            else:
                return 0
        pk = m[k][k]
        rowk = m[k]
        for i in range(k + 1, n):
            rowi = m[i]
            a = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (rowi[j] * pk - a * rowk[j]) // prev
        prev = pk
    return s * m[n - 1][n - 1]


def _check_square(rows: Sequence[Sequence[Scalar]]) -> int:
    n = len(rows)
    for r in rows:
        if len(r) != n:
            raise DimensionMismatch(f"expected {n} rows of length {n}, got a row of length {len(r)}")
    return n


def int_det(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix (no validation beyond shape)."""
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    if n == 2:
        (a, b), (c, d) = rows
        return a * d - b * c
    if n == 3:
        (a, b, c), (d, e, f), (g, h, i) = rows
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    return _bareiss([list(r) for r in rows])


def det(rows: Sequence[Sequence[Scalar]]) -> Fraction:
    """Exact determinant of the square matrix whose rows are ``rows``."""
    n = _check_square(rows)
    scale = 1
    irows = []
    for r in rows:
        ir, s = integer_row(r)
        irows.append(ir)
        scale *= s
    value = int_det(irows) if n else 1
    return Fraction(value, scale)


def det_sign(rows: Sequence[Sequence[Scalar]]) -> int:
    """Sign of the determinant of ``rows`` (each row of length ``len(rows)``)."""
    n = _check_square(rows)
    if n == 0:
        return 1
    # positive row scaling leaves the sign alone
    return sign(int_det([integer_row(r)[0] for r in rows]))


_FLOAT_EXACT = 2.0**52
_FILTER = 1e-10


def batch_det_signs(mats: np.ndarray) -> np.ndarray:
    """Signs of a stack of small integer matrices, shape ``(m, r, r)``.

    Determinants are expanded over all ``r!`` permutations in float64 and a
    sign is accepted only when ``|det|`` clears ``_FILTER`` times the
    permanent of ``|A|`` (a bound on the accumulated rounding error that is
    many orders of magnitude too generous).  Everything else, and any input
    whose entries are not exactly representable, is redone with integers.
    """
    mats = np.asarray(mats)
    m, r = mats.shape[0], mats.shape[1]
    if m == 0:
        return np.zeros(0, dtype=np.int8)
    as_float = mats.astype(np.float64)
    if r > 5 or mats.dtype == object or np.abs(as_float).max() >= _FLOAT_EXACT:
        return np.array([sign(int_det([[int(v) for v in row] for row in a])) for a in mats], dtype=np.int8)
    total = np.zeros(m)
    bound = np.zeros(m)
    for perm in permutations(range(r)):
        inv = sum(1 for i in range(r) for j in range(i + 1, r) if perm[i] > perm[j])
        term = as_float[:, 0, perm[0]].copy()
        for i in range(1, r):
            term *= as_float[:, i, perm[i]]
        total += -term if inv % 2 else term
        bound += np.abs(term)
    out = np.sign(total).astype(np.int8)
    unsure = np.flatnonzero((np.abs(total) <= _FILTER * bound) & (bound > 0))
    for idx in unsure:
        out[idx] = sign(int_det([[int(v) for v in row] for row in mats[idx]]))
    return out


def dot(u: Sequence[Scalar], v: Sequence[Scalar]):
    return sum(a * b for a, b in zip(u, v))


def cross(u: Sequence[Scalar], v: Sequence[Scalar]) -> tuple:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def sub(u, v) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v) -> tuple:
    return tuple(c * a for a in v)


def hyperplane_vector(xs: Sequence[Sequence[Scalar]]) -> tuple:
    """Generalized cross product of ``d`` vectors of ``R^{d+1}``.

    The result ``N`` satisfies ``<N, v> = det(x_1, ..., x_d, v)`` for every
    ``v``; it is zero exactly when the ``x_i`` are dependent.  ``N`` is left
    unnormalized.
    """
    d = len(xs)
    dim = d + 1
    for x in xs:
        if len(x) != dim:
            raise DimensionMismatch(f"{d} vectors must live in R^{dim}, got length {len(x)}")
    if d == 2:
        return cross(xs[0], xs[1])
    scale_ = 1
    irows = []
    for r in xs:
        ir, s = integer_row(r)
        irows.append(ir)
        scale_ *= s
    out = []
    for j in range(dim):
        minor = [row[:j] + row[j + 1:] for row in irows]
        c = int_det(minor)
        if (d + j) % 2:
            c = -c
        out.append(c if scale_ == 1 else Fraction(c, scale_))
    return tuple(out)


def int_hyperplane_vector(xs: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """:func:`hyperplane_vector` restricted to integer input (hot path)."""
    d = len(xs)
    if d == 2:
        return cross(xs[0], xs[1])
    out = []
    for j in range(d + 1):
        c = int_det([row[:j] + row[j + 1:] for row in xs])
        out.append(-c if (d + j) % 2 else c)
    return tuple(out)


def solve(a: Sequence[Sequence[Scalar]], b: Sequence[Scalar]) -> tuple:
    """Solve the square system ``a z = b`` exactly by Gauss-Jordan elimination."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(a, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [x / p for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return tuple(row[n] for row in m)


@dataclass(frozen=True)
class OrientedProjection:
    """Orthogonal projection onto ``omega^perp`` with an oriented basis.

    ``basis`` is ordered so that ``det(omega, *basis) > 0``.  The basis is not
    orthonormal; :meth:`coordinates` expresses ``p(x)`` in it and
    :meth:`gram` returns its Gram matrix.
    """

    omega: tuple
    basis: tuple
    pivot: int
    order: tuple  # standard-basis index feeding each basis vector
    flipped: bool  # single basis vector negated (ambient dimension 2)

    @property
    def dim(self) -> int:
        return len(self.omega)

    def project(self, x: Sequence[Scalar]) -> tuple:
        w = self.omega
        t = Fraction(dot(x, w)) / dot(w, w)
        return tuple(a - t * b for a, b in zip(x, w))

    def coordinates(self, x: Sequence[Scalar]) -> tuple:
        # p(x) = sum_{i != k} (x_i - x_k w_i / w_k) p(e_i)
        w, k = self.omega, self.pivot
        ratio = Fraction(x[k]) / w[k]
        coords = [x[i] - ratio * w[i] for i in self.order]
        if self.flipped:
            coords = [-c for c in coords]
        return tuple(coords)

    def gram(self) -> tuple:
        return tuple(tuple(dot(u, v) for v in self.basis) for u in self.basis)


def oriented_projection_basis(omega: Sequence[Scalar]) -> OrientedProjection:
    omega = as_vec(omega)
    d = len(omega)
    if d < 2:
        raise DimensionMismatch("omega^perp needs ambient dimension >= 2")
    if all(c == 0 for c in omega):
        raise ZeroWitness("omega must be nonzero")
    k = max(range(d), key=lambda i: (abs(omega[i]), -i))
    order = [i for i in range(d) if i != k]
    wsq = dot(omega, omega)

    def p_e(i):
        return tuple(Fraction(int(j == i)) - Fraction(omega[i] * omega[j], wsq) for j in range(d))

    basis = [p_e(i) for i in order]
    flipped = False
    if det_sign([omega] + basis) < 0:
        if len(basis) >= 2:
            basis[0], basis[1] = basis[1], basis[0]
            order[0], order[1] = order[1], order[0]
        else:
            basis[0] = tuple(-c for c in basis[0])
            flipped = True
    return OrientedProjection(omega, tuple(basis), k, tuple(order), flipped)
