"""Hyperplane-vector families, wedge chirotopes and strong geometries.

For a configuration of ``n`` vectors in ``R^D`` (affine configurations are
homogenized first, so ``D = d + 1``) every increasing ``(D-1)``-tuple ``I`` of
labels gets the hyperplane-vector ``alpha(I)``.  The wedge chirotope is the
linear chirotope of that family, on the ground set of increasing tuples in
lexicographic order.  A dependent tuple gives the zero vector, which is kept
in place as a loop.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, islice, permutations
from math import comb, gcd
from typing import Iterable, Optional, Sequence

import numpy as np

from .chirotope import (
    AFFINE,
    LINEAR,
    Chirotope,
    PointConfig,
    chirotope,
    parity_sort,
)
from .errors import (
    DimensionMismatch,
    MissingWedgeEntry,
    SearchTooLarge,
    TooFewPoints,
    UnknownLabel,
)
from .predicates import (
    OrientedProjection,
    batch_det_signs,
    cross,
    det_sign,
    dot,
    hyperplane_vector,
    int_det,
    int_hyperplane_vector,
    oriented_projection_basis,
    sign,
    solve,
    sub,
)
from .rng import SplitMix64, random_vector

EAGER_LIMIT = 20


@dataclass(frozen=True)
class WedgeFamily:
    """``alpha(I)`` for every increasing ``(D-1)``-tuple ``I`` (integer-scaled)."""

    config: PointConfig
    indices: tuple
    alphas: dict

    @property
    def ambient(self) -> int:
        return len(self.config.vectors()[0]) if self.config.n else self.config.rank

    def loops(self) -> frozenset:
        return frozenset(I for I in self.indices if not any(self.alphas[I]))

    def exact(self, I: tuple) -> tuple:
        """Unscaled exact ``alpha`` of the exact (possibly rational) vectors."""
        vecs = self.config.vectors()
        return hyperplane_vector([vecs[i] for i in I])


def wedge_family(X: PointConfig) -> WedgeFamily:
    D = X.rank
    if X.n < D - 1:
        raise TooFewPoints(f"{X.n} points, need at least {D - 1}")
    vecs = X.int_vectors
    indices = tuple(combinations(range(X.n), D - 1))
    alphas = {I: int_hyperplane_vector([vecs[i] for i in I]) for I in indices}
    return WedgeFamily(X, indices, alphas)


def _family_chirotope(ground: Sequence, alphas: dict, rank: int, eager: Optional[bool] = None) -> Chirotope:
    def fn(t):
        return sign(int_det([alphas[I] for I in t]))

    if eager is None:
        eager = len(ground) <= EAGER_LIMIT
    return Chirotope(ground, rank, fn, eager=eager)


def wedge_chirotope(X: PointConfig, eager: Optional[bool] = None, family: Optional[WedgeFamily] = None) -> Chirotope:
    fam = family or wedge_family(X)
    return _family_chirotope(fam.indices, fam.alphas, X.rank, eager)


@dataclass
class StrongGeometry:
    """Base chirotope paired with the wedge chirotope of the homogenized configuration."""

    base: Chirotope
    wedge: Chirotope
    mode: str
    family: Optional[WedgeFamily] = field(default=None, repr=False)

    @property
    def rank(self) -> int:
        return self.base.rank

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def labels(self) -> tuple:
        return self.base.ground

    def loops(self) -> frozenset:
        if self.family is not None:
            return self.family.loops()
        # a hyperplane-vector is zero iff its tuple is dependent, which the
        # wedge chirotope alone shows as an all-zero column
        return frozenset(I for I in self.wedge.ground
                         if all(s == 0 for t, s in self.wedge.items() if I in t))

    def wedge_sign(self, *tuples: Sequence[int]) -> int:
        """``Delta(alpha(T_1), ..., alpha(T_D))`` for arbitrarily ordered label tuples.

        Uses only wedge-chirotope lookups: each tuple is sorted and the
        permutation parity applied, since ``alpha`` is alternating.
        """
        s = 1
        idx = []
        for t in tuples:
            par, key = parity_sort(t)
            if par == 0:
                return 0
            s *= par
            idx.append(key)
        return s * self.wedge(tuple(idx))


def strong_geometry(X: PointConfig, eager: Optional[bool] = None) -> StrongGeometry:
    fam = wedge_family(X)
    return StrongGeometry(chirotope(X), wedge_chirotope(X, eager, fam), X.mode, fam)


# witnessed wedge chirotopes ----------------------------------------------------


def _pairs_without(n: int, omega: int) -> tuple:
    return tuple(combinations([i for i in range(n) if i != omega], 2))


def witnessed_wedge_chirotope(X: PointConfig, omega: int, route: str = "translate") -> Chirotope:
    """Rank-3 wedge chirotope of ``(x_i - omega)`` on pairs of labels other than ``omega``.

    ``route="project"`` computes it instead from the orthogonal projection of
    the homogenized points onto the oriented hyperplane ``omega^perp`` in
    ``R^4``, using the Gram-corrected hyperplane-vectors of that subspace.
    Both routes give the same signs.
    """
    if X.mode != AFFINE or X.dim != 3:
        raise DimensionMismatch("witnessed wedge chirotopes are defined for affine R^3")
    if omega not in X.labels:
        raise UnknownLabel(omega)
    ground = _pairs_without(X.n, omega)
    if route == "translate":
        w = X.coords[omega]
        T = {i: sub(c, w) for i, c in enumerate(X.coords) if i != omega}
        alphas = {}
        for a, b in ground:
            alphas[(a, b)] = cross(T[a], T[b])
        # exact Fractions allowed here; scale rows positively for the integer det
        def fn(t):
            return det_sign([alphas[I] for I in t])

        return Chirotope(ground, 3, fn)
    if route == "project":
        vecs = X.vectors()
        proj = oriented_projection_basis(vecs[omega])
        gram = proj.gram()
        coords = {i: proj.coordinates(v) for i, v in enumerate(vecs) if i != omega}
        alphas = {}
        for a, b in ground:
            alphas[(a, b)] = solve(gram, cross(coords[a], coords[b]))

        def fn(t):
            return det_sign([alphas[I] for I in t])

        return Chirotope(ground, 3, fn)
    raise ValueError(f"unknown route {route!r}")


def first_nonzero_complement(base: Chirotope, omega: int) -> tuple:
    """Lexicographically first increasing tuple ``J`` with ``chi(omega, J) != 0``."""
    others = [i for i in base.ground if i != omega]
    for J in combinations(others, base.rank - 1):
        if base((omega,) + J) != 0:
            return J
    raise MissingWedgeEntry(f"no tuple J with chi({omega}, J) != 0")


def witnessed_sign_from_wedge(SG: StrongGeometry, omega: int, pairs: Sequence[tuple], J: Optional[tuple] = None,
                              convention: str = "plain") -> int:
    """Witnessed wedge sign ``chi_{Lambda,omega}(a_1, a_2, a_3)`` from strong-geometry lookups.

    The three hyperplanes ``alpha(omega, a_k)`` all contain ``omega``, so the
    4x4 wedge determinant with a fourth index ``J`` factors as the witnessed
    sign times ``chi(omega, J)``.  ``convention="negated"`` returns the
    opposite sign; it exists so the negated relation can be tested.
    """
    if SG.rank != 4:
        raise DimensionMismatch("witness extraction is implemented for rank 4")
    if J is None:
        J = first_nonzero_complement(SG.base, omega)
    cj = SG.base((omega,) + tuple(J))
    if cj == 0:
        raise ValueError(f"chi({omega}, {J}) = 0")
    big = SG.wedge_sign(*[(omega,) + tuple(a) for a in pairs], tuple(J))
    if convention == "plain":
        return big * cj
    if convention == "negated":
        return -big * cj
    raise ValueError(f"unknown convention {convention!r}")


# identity checks --------------------------------------------------------------


@dataclass
class IdentityReport:
    name: str
    checked: int = 0
    violations: int = 0
    examples: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.violations == 0

    def record(self, ok: bool, example=None, keep: int = 5):
        self.checked += 1
        if not ok:
            self.violations += 1
            if len(self.examples) < keep:
                self.examples.append(example)

    def summary(self) -> str:
        return f"{self.name}: checked={self.checked} violations={self.violations}"


def verify_rank3_identity(X: PointConfig, method: str = "fast") -> IdentityReport:
    """``chi_Lambda((a,b),(a,c),(x,y)) = chi(a,b,c) chi(a,x,y)`` over every label choice.

    ``method="lookup"`` evaluates both sides through the chirotope objects
    one tuple at a time.  ``method="fast"`` evaluates the same determinants
    in bulk: ``Delta(alpha_ab, alpha_ac, alpha_xy) = <alpha_ab x alpha_ac, alpha_xy>``
    with a floating-point filter and exact integer fallback.
    """
    if X.rank != 3:
        raise DimensionMismatch("rank-3 identity needs a rank-3 configuration")
    if method == "lookup":
        return _rank3_lookup(X)
    if method != "fast":
        raise ValueError(f"unknown method {method!r}")
    fam = wedge_family(X)
    vecs = X.int_vectors
    n = X.n
    alpha = {}
    for (a, b), v in fam.alphas.items():
        alpha[(a, b)] = v
        alpha[(b, a)] = tuple(-c for c in v)
    pairs = list(permutations(range(n), 2))
    P = np.array([_primitive(alpha[p]) for p in pairs], dtype=np.float64)
    absP = np.abs(P)
    # chi(a, x, y) = <alpha(x, y), v_a>
    base = np.array([[sign(dot(alpha[p], vecs[a])) for p in pairs] for a in range(n)], dtype=np.int64)
    rep = IdentityReport("rank3")
    for a, b, c in permutations(range(n), 3):
        w = _primitive(cross(alpha[(a, b)], alpha[(a, c)]))
        wf = np.array(w, dtype=np.float64)
        val = P @ wf
        bound = absP @ np.abs(wf)
        lhs = np.sign(val).astype(np.int64)
        unsure = np.flatnonzero(np.abs(val) <= 1e-9 * bound)
        for k in unsure:
            lhs[k] = sign(dot(_primitive(alpha[pairs[k]]), w))
        rhs = base[a][pairs.index((b, c))] * base[a]
        bad = np.flatnonzero(lhs != rhs)
        rep.checked += len(pairs)
        rep.violations += int(bad.size)
        for k in bad[: max(0, 5 - len(rep.examples))]:
            rep.examples.append((a, b, c) + pairs[k])
    return rep


def _primitive(v: tuple) -> tuple:
    g = 0
    for c in v:
        g = gcd(g, c)
    return tuple(c // g for c in v) if g > 1 else v


def _rank3_lookup(X: PointConfig) -> IdentityReport:
    SG = strong_geometry(X, eager=False)
    base = SG.base
    rep = IdentityReport("rank3")
    labels = range(X.n)
    for a, b, c in permutations(labels, 3):
        abc = base(a, b, c)
        for x, y in permutations(labels, 2):
            lhs = SG.wedge_sign((a, b), (a, c), (x, y))
            rhs = abc * base(a, x, y)
            rep.record(lhs == rhs, (a, b, c, x, y))
    return rep


def random_rational_config(rng: SplitMix64, n: int, dim: int, mode: str = AFFINE, bound: int = 20,
                           max_den: int = 10) -> PointConfig:
    return PointConfig(tuple(random_vector(rng, dim, bound, max_den) for _ in range(n)), mode, dim)


def _nonzero_vector(rng: SplitMix64, dim: int, bound: int, max_den: int) -> tuple:
    while True:
        v = random_vector(rng, dim, bound, max_den)
        if any(v):
            return v


def tilde_delta(omega: Sequence, groups: Sequence[Sequence[Sequence]], proj: Optional[OrientedProjection] = None) -> int:
    """``Delta~(alpha~(X_1), ..., alpha~(X_{d-1}))`` computed inside the oriented ``omega^perp``.

    Each group is projected, written in the oriented basis, and its
    hyperplane-vector taken with respect to the induced inner product
    (Gram matrix ``G``): ``alpha~ = G^{-1} N`` where ``N`` is the cofactor
    vector in coordinates.
    """
    proj = proj or oriented_projection_basis(omega)
    gram = proj.gram()
    rows = []
    for g in groups:
        coords = [proj.coordinates(x) for x in g]
        rows.append(solve(gram, hyperplane_vector(coords)))
    return det_sign(rows)


def verify_dimension_reduction(d: int, trials: int, seed: int = 0, bound: int = 20, max_den: int = 10) -> IdentityReport:
    """Dimension-reduction identity for the witnessed wedge, on seeded random instances.

    Counts violations of the omega-first form
    ``LHS = (-1)^{d+1} Delta~ Delta(omega, y_1, ..., y_{d-1})`` in
    ``violations``, and of the omega-last form
    ``LHS = (-1)^{d+1} Delta~ Delta(y_1, ..., y_{d-1}, omega)`` in
    ``extra["omega_last_violations"]``.  The two agree for odd ``d``.
    """
    if d < 3:
        raise DimensionMismatch("the identity needs d >= 3")
    rng = SplitMix64(seed)
    rep = IdentityReport(f"linwit d={d}")
    last_bad = 0
    fixed_examples = []
    degenerate = 0
    factor = -1 if (d + 1) % 2 else 1
    for t in range(trials):
        omega = _nonzero_vector(rng, d, bound, max_den)
        xs = [[random_vector(rng, d, bound, max_den) for _ in range(d - 2)] for _ in range(d - 1)]
        ys = [random_vector(rng, d, bound, max_den) for _ in range(d - 1)]
        lhs = det_sign([hyperplane_vector([omega] + g) for g in xs] + [hyperplane_vector(ys)])
        td = tilde_delta(omega, xs)
        stated = factor * td * det_sign([omega] + ys)
        fixed = factor * td * det_sign(ys + [omega])
        if lhs == 0:
            degenerate += 1
        rep.record(lhs == stated, t)
        if lhs != fixed:
            last_bad += 1
            if len(fixed_examples) < 5:
                fixed_examples.append(t)
    rep.extra["omega_last_violations"] = last_bad
    rep.extra["omega_last_examples"] = fixed_examples
    rep.extra["degenerate"] = degenerate
    return rep


def verify_wit2(X: PointConfig, convention: str = "negated") -> IdentityReport:
    """Witnessed wedge by translation vs. extraction from the full wedge chirotope.

    Runs over every witness, every triple of pairs and every ``J`` with
    ``chi(omega, J) != 0``.
    """
    SG = strong_geometry(X, eager=False)
    rep = IdentityReport(f"wit2 ({convention})")
    for omega in range(X.n):
        direct = witnessed_wedge_chirotope(X, omega)
        js = [J for J in combinations([i for i in range(X.n) if i != omega], 3) if SG.base((omega,) + J) != 0]
        for trip in combinations(direct.ground, 3):
            want = direct(trip)
            for J in js:
                got = witnessed_sign_from_wedge(SG, omega, trip, J, convention)
                rep.record(got == want, (omega, trip, J))
    return rep


def recover_base_from_wedge(SG: StrongGeometry, strict: bool = False) -> Chirotope:
    """Rank-4 base chirotope rebuilt from wedge lookups alone.

    ``chi(x,a,b,c) = chi_Lambda(alpha(x,a,b), alpha(x,a,c), alpha(x,b,c), alpha(a,b,c))``.
    With ``strict`` a loop among those four indices raises
    :class:`MissingWedgeEntry` instead of yielding 0.
    """
    if SG.rank != 4:
        raise DimensionMismatch("recovery is implemented for rank 4")
    loops = SG.loops() if strict else frozenset()

    def fn(t):
        x, a, b, c = t
        idx = ((x, a, b), (x, a, c), (x, b, c), (a, b, c))
        for I in idx:
            if I in loops:
                raise MissingWedgeEntry(f"hyperplane-vector of {I} is zero")
        return SG.wedge(idx)

    return Chirotope(SG.base.ground, 4, fn)


def verify_recover4(X: PointConfig) -> IdentityReport:
    SG = strong_geometry(X, eager=False)
    rec = recover_base_from_wedge(SG)
    rep = IdentityReport("recover4")
    for t, s in SG.base.items():
        rep.record(rec(t) == s, t)
    return rep


def verify_parity_invariance(d: int, trials: int, seed: int = 0) -> IdentityReport:
    """Equal wedge chirotopes force equal (d even) or opposite (d odd) base chirotopes.

    Checked on ``X`` vs ``-X``, ``X`` vs ``2X`` and ``X`` vs a relabeled copy
    (compared through the relabeling), for linear configurations in ``R^d``.
    """
    rng = SplitMix64(seed)
    rep = IdentityReport(f"parity d={d}")
    for t in range(trials):
        n = rng.randint(d + 1, d + 2)
        X = random_rational_config(rng, n, d, LINEAR)
        A = strong_geometry(X, eager=False)
        neg = strong_geometry(X.mapped(lambda c: tuple(-v for v in c)), eager=False)
        dbl = strong_geometry(X.mapped(lambda c: tuple(2 * v for v in c)), eager=False)
        perm = list(range(n))
        rng.shuffle(perm)
        rel = strong_geometry(X.relabeled(perm), eager=False)
        inv = [0] * n
        for i, p in enumerate(perm):
            inv[p] = i
        expect = 1 if d % 2 == 0 else -1
        wedge_same = neg.wedge.same_signs(A.wedge)
        base_rel = all(neg.base.sign_of_positions(k) == expect * s
                       for k, s in zip(combinations(range(n), d), (v for _, v in A.base.items())))
        rep.record(wedge_same and base_rel, ("neg", t))
        rep.record(dbl.wedge.same_signs(A.wedge) and dbl.base.same_signs(A.base), ("double", t))
        rep.record(compare_strong_geometries(A, rel, inv).isomorphic, ("relabel", t))
    return rep


# route checks used by property tests ------------------------------------------


def rank3_cross_route(X: PointConfig, i: tuple, j: tuple, k: tuple) -> tuple[int, int]:
    """Rank 3: ``Delta(alpha_i, alpha_j, alpha_k)`` and ``Delta(alpha_i ^ alpha_j, x_k, y_k)``."""
    v = X.vectors()
    ai, aj, ak = (cross(v[p[0]], v[p[1]]) for p in (i, j, k))
    return det_sign([ai, aj, ak]), det_sign([cross(ai, aj), v[k[0]], v[k[1]]])


def nested_alpha_routes(Xs: Sequence[Sequence], Y: Sequence) -> tuple[int, int, int]:
    """Three evaluations of a wedge sign through nested hyperplane-vectors.

    Returns ``Delta(alpha(X_1), ..., alpha(X_d), alpha(Y))``,
    ``sign <alpha(alpha(X_1), ..., alpha(X_d)), alpha(Y)>`` and
    ``Delta(alpha(alpha(X_1), ..., alpha(X_d)), y_1, ..., y_d)``.
    The first two always agree; the third carries an extra ``(-1)^d``.
    """
    alphas = [hyperplane_vector(g) for g in Xs]
    aY = hyperplane_vector(Y)
    nested = hyperplane_vector(alphas)
    return det_sign(alphas + [aY]), sign(dot(nested, aY)), det_sign([nested] + list(Y))


def side_sign(X: PointConfig, I: tuple, k: int) -> tuple[int, int]:
    """``sign <alpha(I), x_k>`` next to ``Delta(X_I, x_k)``."""
    v = X.vectors()
    return sign(dot(hyperplane_vector([v[i] for i in I]), v[k])), det_sign([v[i] for i in I] + [v[k]])


# comparison -------------------------------------------------------------------


@dataclass
class Comparison:
    isomorphic: bool
    bijection: Optional[tuple] = None
    witness: Optional[tuple] = None  # (component, tuple in A, sign in A, sign in B)
    searched: int = 0


def _ordered_alpha(fam: WedgeFamily, t: tuple) -> tuple:
    par, key = parity_sort(t)
    a = fam.alphas[key]
    return a if par > 0 else tuple(-x for x in a)


def _wedge_compare_fast(famA: WedgeFamily, famB: WedgeFamily, perm: Sequence[int], chunk: int = 250_000):
    """First wedge disagreement under ``perm`` (None when all signs agree)."""
    idx = famA.indices
    A = np.array([famA.alphas[I] for I in idx], dtype=object)
    B = np.array([_ordered_alpha(famB, tuple(perm[i] for i in I)) for I in idx], dtype=object)
    try:
        A = A.astype(np.int64)
        B = B.astype(np.int64)
    except OverflowError:
        pass
    r = A.shape[1]
    combos = combinations(range(len(idx)), r)
    while True:
        block = np.fromiter((c for t in islice(combos, chunk) for c in t), dtype=np.intp)
        if block.size == 0:
            return None
        block = block.reshape(-1, r)
        sa = batch_det_signs(A[block])
        sb = batch_det_signs(B[block])
        bad = np.flatnonzero(sa != sb)
        if bad.size:
            k = bad[0]
            return tuple(idx[j] for j in block[k]), int(sa[k]), int(sb[k])


def _base_mismatch(A: Chirotope, B: Chirotope, perm: Sequence[int]):
    for t, s in A.items():
        o = B(tuple(perm[i] for i in t))
        if o != s:
            return t, s, o
    return None


def compare_strong_geometries(A: StrongGeometry, B: StrongGeometry, bijection: Optional[Sequence[int]] = None,
                              search_limit: int = 9) -> Comparison:
    """Check whether a label bijection carries ``A`` onto ``B``.

    ``bijection[i]`` is the label of ``B`` matched with label ``i`` of ``A``;
    wedge indices follow through the induced map on increasing tuples
    (with the sorting parity).  Without a bijection every permutation is
    searched by backtracking on the base chirotope, up to ``search_limit``
    labels.
    """
    if A.n != B.n or A.rank != B.rank:
        return Comparison(False, witness=("size", (A.n, A.rank), None, (B.n, B.rank)))
    n = A.n
    if bijection is not None:
        perm = tuple(bijection)
        if sorted(perm) != list(range(n)):
            raise ValueError("bijection must be a permutation of the labels")
        bad = _base_mismatch(A.base, B.base, perm)
        if bad:
            return Comparison(False, perm, ("base",) + bad, 1)
        bad = _wedge_mismatch(A, B, perm)
        if bad:
            return Comparison(False, perm, ("wedge",) + bad, 1)
        return Comparison(True, perm, None, 1)
    if n > search_limit:
        raise SearchTooLarge(f"{n} labels exceed the search limit {search_limit}")
    tried = 0
    first_fail = None
    for perm in _base_isomorphisms(A.base, B.base):
        tried += 1
        bad = _wedge_mismatch(A, B, perm)
        if bad is None:
            return Comparison(True, perm, None, tried)
        first_fail = first_fail or ("wedge",) + bad
    return Comparison(False, None, first_fail, tried)


def _wedge_mismatch(A: StrongGeometry, B: StrongGeometry, perm: Sequence[int]):
    if A.family is not None and B.family is not None:
        return _wedge_compare_fast(A.family, B.family, perm)
    for ts, s in A.wedge.items():
        o = B.wedge_sign(*[tuple(perm[i] for i in I) for I in ts])
        if o != s:
            return ts, s, o
    return None


def _base_isomorphisms(A: Chirotope, B: Chirotope) -> Iterable[tuple]:
    """Permutations carrying the base chirotope of ``A`` onto that of ``B``.

    Labels are assigned in order; every tuple whose labels are all assigned
    is checked as soon as its last label is placed.
    """
    n, r = A.n, A.rank
    by_last = {k: [] for k in range(n)}
    for t, s in A.items():
        by_last[t[-1]].append((t, s))
    perm = [None] * n
    used = [False] * n

    def place(k):
        if k == n:
            yield tuple(perm)
            return
        for c in range(n):
            if used[c]:
                continue
            perm[k] = c
            if all(B(tuple(perm[i] for i in t)) == s for t, s in by_last[k]):
                used[c] = True
                yield from place(k + 1)
                used[c] = False
        perm[k] = None

    if r > n:
        return iter(())
    return place(0)
