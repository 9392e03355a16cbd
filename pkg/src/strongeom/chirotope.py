"""Point configurations, chirotopes, signed circuits and axiom checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Callable, Hashable, Iterable, Iterator, Mapping, Optional, Sequence

import numpy as np

from .errors import DegenerateSupport, DimensionMismatch, TooFewPoints, UnknownLabel
from .predicates import as_vec, integer_row, int_det, sign, sub
from .rng import SplitMix64

LINEAR = "linear"
AFFINE = "affine"


@dataclass(frozen=True)
class PointConfig:
    """Labeled points (affine mode) or vectors (linear mode) with exact coordinates.

    Labels are implicit: the point at position ``i`` has label ``i``.
    """

    coords: tuple
    mode: str = AFFINE
    dim: int = field(default=-1)

    def __post_init__(self):
        coords = tuple(as_vec(c) for c in self.coords)
        if self.mode not in (LINEAR, AFFINE):
            raise ValueError(f"unknown mode {self.mode!r}")
        dim = self.dim
        if dim < 0:
            if not coords:
                raise TooFewPoints("empty configuration needs an explicit dimension")
            dim = len(coords[0])
        for i, c in enumerate(coords):
            if len(c) != dim:
                raise DimensionMismatch(f"label {i}: expected {dim} coordinates, got {len(c)}")
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "dim", dim)

    @property
    def n(self) -> int:
        return len(self.coords)

    @property
    def labels(self) -> range:
        return range(self.n)

    @property
    def rank(self) -> int:
        """Rank of the associated chirotope (``d+1`` in affine mode)."""
        return self.dim + 1 if self.mode == AFFINE else self.dim

    def vectors(self) -> tuple:
        """Exact vectors, homogenized (``1`` prepended) in affine mode."""
        if self.mode == AFFINE:
            return tuple((1,) + c for c in self.coords)
        return self.coords

    @cached_property
    def int_vectors(self) -> tuple:
        # positive multiples of vectors(); every determinant sign is preserved
        return tuple(integer_row(v)[0] for v in self.vectors())

    def homogenized(self) -> "PointConfig":
        return PointConfig(self.vectors(), LINEAR)

    def translated(self, omega: int) -> "PointConfig":
        """Linear configuration ``(x_i - x_omega)`` over labels other than ``omega``."""
        w = self.coords[omega]
        return PointConfig(tuple(sub(c, w) for i, c in enumerate(self.coords) if i != omega), LINEAR, self.dim)

    def relabeled(self, perm: Sequence[int]) -> "PointConfig":
        """New configuration whose label ``i`` carries the point of label ``perm[i]``."""
        return PointConfig(tuple(self.coords[p] for p in perm), self.mode, self.dim)

    def mapped(self, f: Callable[[tuple], tuple]) -> "PointConfig":
        return PointConfig(tuple(f(c) for c in self.coords), self.mode, self.dim)


def parity_sort(positions: Sequence[int]) -> tuple[int, tuple]:
    """Sort ``positions``; return (permutation sign, sorted tuple), sign 0 on repeats."""
    p = list(positions)
    s = 1
    for i in range(1, len(p)):
        j = i
        while j > 0 and p[j - 1] > p[j]:
            p[j - 1], p[j] = p[j], p[j - 1]
            s = -s
            j -= 1
    for i in range(1, len(p)):
        if p[i] == p[i - 1]:
            return 0, tuple(p)
    return s, tuple(p)


class Chirotope:
    """Alternating sign map of rank ``rank`` on an ordered ground set.

    Signs are stored only for strictly increasing tuples (in ground-set
    order); any other ordering is resolved by permutation parity, repeated
    elements give 0.  Construction is lazy: ``sign_fn`` is called on demand
    and memoized.  Concurrent lookups are safe: a memo cell is only ever
    written with the one value ``sign_fn`` returns for it.
    """

    def __init__(
        self,
        ground: Sequence[Hashable],
        rank: int,
        sign_fn: Optional[Callable[[tuple], int]] = None,
        signs: Optional[Mapping[tuple, int]] = None,
        eager: bool = False,
    ):
        self.ground = tuple(ground)
        self.rank = rank
        self._pos = {e: i for i, e in enumerate(self.ground)}
        if len(self._pos) != len(self.ground):
            raise ValueError("ground set has repeated elements")
        self._fn = sign_fn
        self._memo: dict[tuple, int] = {}
        if signs is not None:
            for t, s in signs.items():
                par, key = parity_sort([self._position(e) for e in t])
                if par == 0:
                    raise ValueError(f"repeated element in {t}")
                self._memo[key] = par * s
            if sign_fn is None:
                self._fn = lambda t: 0
        if self._fn is None:
            raise ValueError("need sign_fn or signs")
        if eager:
            for _ in self.items():
                pass

    def _position(self, e) -> int:
        try:
            return self._pos[e]
        except KeyError:
            raise UnknownLabel(e) from None

    @property
    def n(self) -> int:
        return len(self.ground)

    def sign_of_positions(self, key: tuple) -> int:
        """Sign of a strictly increasing tuple of ground positions."""
        s = self._memo.get(key)
        if s is None:
            s = self._fn(tuple(self.ground[i] for i in key))
            self._memo[key] = s
        return s

    def __call__(self, *elems) -> int:
        if len(elems) == 1 and isinstance(elems[0], (tuple, list)) and len(elems[0]) == self.rank and self.rank != 1:
            elems = tuple(elems[0])
        if len(elems) != self.rank:
            raise DimensionMismatch(f"rank {self.rank} chirotope called with {len(elems)} elements")
        par, key = parity_sort([self._position(e) for e in elems])
        if par == 0:
            return 0
        return par * self.sign_of_positions(key)

    def tuples(self) -> Iterator[tuple]:
        """Strictly increasing rank-tuples of ground elements, lexicographically."""
        for key in combinations(range(self.n), self.rank):
            yield tuple(self.ground[i] for i in key)

    def items(self) -> Iterator[tuple[tuple, int]]:
        for key in combinations(range(self.n), self.rank):
            yield tuple(self.ground[i] for i in key), self.sign_of_positions(key)

    def as_dict(self) -> dict:
        return dict(self.items())

    def same_signs(self, other: "Chirotope") -> bool:
        if self.ground != other.ground or self.rank != other.rank:
            return False
        return all(s == other.sign_of_positions(k)
                   for k, s in zip(combinations(range(self.n), self.rank), (v for _, v in self.items())))

    def negated(self) -> "Chirotope":
        return Chirotope(self.ground, self.rank, lambda t: -self(t))

    def __repr__(self) -> str:
        return f"Chirotope(rank={self.rank}, n={self.n})"


def _config_chirotope(vectors: Sequence[tuple], labels: Sequence[int], rank: int, eager: bool = False) -> Chirotope:
    lookup = dict(zip(labels, vectors))

    def fn(t):
        return sign(int_det([lookup[i] for i in t]))

    return Chirotope(labels, rank, fn, eager=eager)


def linear_chirotope(X: PointConfig, eager: bool = False) -> Chirotope:
    if X.mode != LINEAR:
        raise ValueError("linear_chirotope needs a configuration in linear mode")
    if X.n < X.dim:
        raise TooFewPoints(f"{X.n} vectors in R^{X.dim}")
    return _config_chirotope(X.int_vectors, range(X.n), X.dim, eager)


def affine_chirotope(X: PointConfig, eager: bool = False) -> Chirotope:
    if X.mode != AFFINE:
        raise ValueError("affine_chirotope needs a configuration in affine mode")
    if X.n < X.dim + 1:
        raise TooFewPoints(f"{X.n} points in affine R^{X.dim}")
    return _config_chirotope(X.int_vectors, range(X.n), X.dim + 1, eager)


def chirotope(X: PointConfig, eager: bool = False) -> Chirotope:
    return affine_chirotope(X, eager) if X.mode == AFFINE else linear_chirotope(X, eager)


def witness_chirotope(X: PointConfig, omega: int) -> Chirotope:
    """Rank-``d`` chirotope ``chi_omega(T) = chi(omega, T)`` on labels other than ``omega``."""
    if X.mode != AFFINE:
        raise ValueError("witness chirotopes are defined for affine configurations")
    if omega not in X.labels:
        raise UnknownLabel(omega)
    base = affine_chirotope(X)
    ground = [i for i in X.labels if i != omega]
    return Chirotope(ground, X.dim, lambda t: base((omega,) + t))


@dataclass(frozen=True)
class SignedCircuit:
    positive: frozenset
    negative: frozenset

    @property
    def support(self) -> frozenset:
        return self.positive | self.negative

    def parts(self) -> set:
        return {self.positive, self.negative}

    def __str__(self) -> str:
        return f"{sorted(self.positive)} | {sorted(self.negative)}"


def circuit_of(source, support: Iterable[int]) -> SignedCircuit:
    """Signed circuit supported in ``support`` (``rank + 1`` labels).

    ``source`` is a :class:`PointConfig` or a :class:`Chirotope`.  The
    coefficients are the signed cofactors ``(-1)^k chi(S - s_k)`` of the
    sorted support; only chirotope lookups are used.
    """
    chi = chirotope(source) if isinstance(source, PointConfig) else source
    s = sorted(support)
    if len(s) != chi.rank + 1 or len(set(s)) != len(s):
        raise ValueError(f"support must have {chi.rank + 1} distinct labels")
    lam = []
    for k in range(len(s)):
        v = chi(tuple(s[:k] + s[k + 1:]))
        lam.append(-v if k % 2 else v)
    nz = [(e, c) for e, c in zip(s, lam) if c != 0]
    if not nz:
        raise DegenerateSupport(f"no circuit supported in {s}")
    flip = nz[0][1]
    pos = frozenset(e for e, c in nz if c * flip > 0)
    neg = frozenset(e for e, c in nz if c * flip < 0)
    return SignedCircuit(pos, neg)


def general_position(chi: Chirotope) -> bool:
    return all(s != 0 for _, s in chi.items())


@dataclass
class AxiomReport:
    ch0: bool
    ch1: bool
    ch3: bool
    exhaustive: bool
    checked: int
    witness: Optional[tuple] = None  # (i_tuple, j_tuple) violating CH3

    @property
    def ok(self) -> bool:
        return self.ch0 and self.ch1 and self.ch3


def _dense_table(chi: Chirotope) -> np.ndarray:
    """All ``n**r`` ordered values of ``chi`` (ground positions as indices)."""
    from itertools import permutations

    n, r = chi.n, chi.rank
    table = np.zeros((n,) * r, dtype=np.int8)
    for key in combinations(range(n), r):
        s = chi.sign_of_positions(key)
        if s == 0:
            continue
        for perm in permutations(range(r)):
            par, _ = parity_sort(perm)
            table[tuple(key[p] for p in perm)] = par * s
    return table


def _ch3_exhaustive(chi: Chirotope) -> tuple[bool, int, Optional[tuple]]:
    n, r = chi.n, chi.rank
    table = _dense_table(chi)
    bases = np.array(list(combinations(range(n), r)), dtype=np.intp)
    m = len(bases)
    chi_b = table[tuple(bases.T)].astype(np.int64)
    checked = 0
    for a in range(m):
        row = bases[a]
        for lead in range(r):
            i1 = row[lead]
            rest = np.delete(row, lead)  # i_2..i_r
            # first factors: chi(j_k, i_2, ..., i_r) for every J and k
            first = np.stack([table[(bases[:, k],) + tuple(rest)] for k in range(r)], axis=1).astype(np.int64)
            second = []
            for k in range(r):
                cols = [bases[:, c] for c in range(r)]
                cols[k] = np.full(m, i1, dtype=np.intp)
                second.append(table[tuple(cols)])
            second = np.stack(second, axis=1).astype(np.int64)
            # chi(i_1, i_2..i_r) with i_1 moved to the front
            lead_sign = (-1) ** lead * chi_b[a]
            prod = first * second
            concl = lead_sign * chi_b
            bad_pos = np.all(prod >= 0, axis=1) & (concl < 0)
            bad_neg = np.all(prod <= 0, axis=1) & (concl > 0)
            bad = np.flatnonzero(bad_pos | bad_neg)
            checked += m
            if bad.size:
                i_t = (chi.ground[i1],) + tuple(chi.ground[x] for x in rest)
                j_t = tuple(chi.ground[x] for x in bases[bad[0]])
                return False, checked, (i_t, j_t)
    return True, checked, None


def _ch3_pair_ok(chi: Chirotope, I: tuple, J: tuple) -> bool:
    r = len(I)
    prods = []
    for k in range(r):
        a = chi((J[k],) + I[1:])
        b = chi(J[:k] + (I[0],) + J[k + 1:])
        prods.append(a * b)
    concl = chi(I) * chi(J)
    if all(p >= 0 for p in prods) and concl < 0:
        return False
    if all(p <= 0 for p in prods) and concl > 0:
        return False
    return True


def check_axioms(chi: Chirotope, exhaustive_limit: int = 10**6, samples: int = 20000, seed: int = 0) -> AxiomReport:
    """Check CH0, CH1 and CH3 (with both sign polarities of the exchange).

    CH3 is exhaustive over ordered pairs of increasing tuples (every choice
    of the leading ``i_1``) when ``C(n, r)**2 <= exhaustive_limit``, otherwise
    ``samples`` pseudo-random pairs drawn with :class:`SplitMix64` are checked.
    """
    n, r = chi.n, chi.rank
    ch0 = any(s != 0 for _, s in chi.items())
    ch1 = True  # alternation holds by construction
    if not ch0:
        return AxiomReport(False, ch1, True, True, 0)
    if comb(n, r) ** 2 <= exhaustive_limit:
        ok, checked, wit = _ch3_exhaustive(chi)
        return AxiomReport(ch0, ch1, ok, True, checked, wit)
    rng = SplitMix64(seed)
    for t in range(samples):
        I = tuple(chi.ground[i] for i in sorted(rng.sample(range(n), r)))
        J = tuple(chi.ground[i] for i in sorted(rng.sample(range(n), r)))
        lead = rng.randint(0, r - 1)
        I = (I[lead],) + I[:lead] + I[lead + 1:]
        if not _ch3_pair_ok(chi, I, J):
            return AxiomReport(ch0, ch1, False, False, t + 1, (I, J))
    return AxiomReport(ch0, ch1, True, False, samples)
