"""Ordinary and rational Schur algebras realized on tensor space.

Conventions
-----------
A basis tensor of ``E^{r,s} = E^{⊗r} ⊗ E*^{⊗s}`` is a tuple of ``r + s``
entries in ``1..n``: the first ``r`` index covariant slots ``v_i``, the last
``s`` contravariant slots ``v'_j``.  Ordinals are lexicographic (base ``n``).
Matrices act on column vectors: entry ``[M, L]`` is the coefficient of
``v_M`` in the image of ``v_L``.

``xi(I, J)`` sends ``v_L`` to the sum of ``v_M`` over all ``M`` with
``(M, L)`` in the place-permutation orbit of ``(I, J)``.  Elements of the
Schur algebra ``S(n, d)`` commute with place permutations, so they are
constant on those orbits; ``schur_coordinates`` keeps one entry per orbit.
"""

from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import comb, isqrt
from typing import Iterable, Iterator, Sequence

from .exactlin import (
    AlgebraSpan,
    Coordinatizer,
    Echelon,
    ExactMatrix,
    nullspace,
    span_closure,
)
from .tableaux import MultiIndex, SemistandardTableau, canonical_index, enum_ssyt, format_tableau, weyl_dim
from .weights import Weight, enum_dominant, format_weight, shift

OrbitKey = tuple[tuple[int, int], ...]


def worker_count() -> int:
    """Parallelism cap from ``RATSCHUR_THREADS`` (default 1, i.e. serial)."""
    try:
        return max(1, int(os.environ.get("RATSCHUR_THREADS", "1")))
    except ValueError:
        return 1


# ---------------------------------------------------------------------------
# tensor space
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TensorSpaceIndex:
    """Basis of ``E^{⊗covariant} ⊗ E*^{⊗contravariant}`` for GL_n."""

    n: int
    covariant: int
    contravariant: int = 0

    @property
    def degree(self) -> int:
        return self.covariant + self.contravariant

    @property
    def dim(self) -> int:
        return self.n**self.degree

    def basis(self) -> list[tuple[int, ...]]:
        return list(_all_indices(self.n, self.degree))

    def ordinal(self, index: Sequence[int]) -> int:
        k = 0
        for x in index:
            if not 1 <= x <= self.n:
                raise IndexError(f"index entry {x} outside 1..{self.n}")
            k = k * self.n + (x - 1)
        return k

    def from_ordinal(self, k: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.degree):
            k, rem = divmod(k, self.n)
            out.append(rem + 1)
        return tuple(reversed(out))

    def weight(self, index: Sequence[int]) -> Weight:
        w = [0] * self.n
        for pos, x in enumerate(index):
            w[x - 1] += 1 if pos < self.covariant else -1
        return tuple(w)

    def weight_multiplicities(self) -> Counter:
        return Counter(self.weight(t) for t in _all_indices(self.n, self.degree))


@lru_cache(maxsize=None)
def _all_indices(n: int, d: int) -> tuple[tuple[int, ...], ...]:
    if d == 0:
        return ((),)
    return tuple(head + (x,) for head in _all_indices(n, d - 1) for x in range(1, n + 1))


def multiset_permutations(items: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Distinct permutations of a multiset, in lexicographic order."""
    counts = Counter(items)
    values = sorted(counts)
    k = len(items)
    buf: list[int] = []

    def rec():
        if len(buf) == k:
            yield tuple(buf)
            return
        for v in values:
            if counts[v]:
                counts[v] -= 1
                buf.append(v)
                yield from rec()
                buf.pop()
                counts[v] += 1

    yield from rec()


def orbit_key(M: Sequence[int], L: Sequence[int]) -> OrbitKey:
    """Canonical label of the place-permutation orbit of the pair ``(M, L)``."""
    return tuple(sorted(zip(L, M)))


def same_orbit(I: Sequence[int], J: Sequence[int], L: Sequence[int], M: Sequence[int]) -> bool:
    return len(I) == len(J) == len(L) == len(M) and orbit_key(I, J) == orbit_key(L, M)


def orbit_column(I: Sequence[int], J: Sequence[int], L: Sequence[int]) -> list[tuple[int, ...]]:
    """All ``M`` with ``(M, L)`` in the orbit of ``(I, J)``."""
    d = len(L)
    paired: dict[int, list[int]] = {}
    for i, j in zip(I, J):
        paired.setdefault(j, []).append(i)
    slots: dict[int, list[int]] = {}
    for pos, l in enumerate(L):
        slots.setdefault(l, []).append(pos)
    if {k: len(v) for k, v in paired.items()} != {k: len(v) for k, v in slots.items()}:
        return []
    out = [[0] * d]
    for l, positions in slots.items():
        choices = list(multiset_permutations(paired[l]))
        nxt = []
        for partial in out:
            for perm in choices:
                m = partial[:]
                for p, v in zip(positions, perm):
                    m[p] = v
                nxt.append(m)
        out = nxt
    return [tuple(m) for m in out]


def _check_multi_index(I: Sequence[int], n: int, d: int) -> None:
    if len(I) != d or any(not 1 <= x <= n for x in I):
        raise IndexError(f"{tuple(I)} is not a multi-index in I({n},{d})")


@dataclass(frozen=True)
class XiElement:
    """``xi(I, J)`` stored with the canonical representative of its orbit."""

    I: MultiIndex
    J: MultiIndex
    n: int
    matrix: ExactMatrix = field(compare=False, repr=False)


def xi_matrix(I: Sequence[int], J: Sequence[int], n: int, d: int | None = None) -> XiElement:
    d = len(I) if d is None else d
    _check_multi_index(I, n, d)
    _check_multi_index(J, n, d)
    space = TensorSpaceIndex(n, d)
    entries = {}
    for L in multiset_permutations(J):
        col = space.ordinal(L)
        for M in orbit_column(I, J, L):
            entries[(space.ordinal(M), col)] = 1
    key = orbit_key(I, J)
    canon_J = tuple(l for l, _ in key)
    canon_I = tuple(i for _, i in key)
    return XiElement(canon_I, canon_J, n, ExactMatrix(space.dim, space.dim, entries))


def weight_idempotent(mu: Sequence[int], d: int) -> ExactMatrix:
    """``xi(l(mu), l(mu))``: the projector onto the mu-weight space of ``E^{⊗d}``."""
    ell = canonical_index(mu)
    return xi_matrix(ell, ell, len(mu), d).matrix


def schur_coordinates(X: ExactMatrix, n: int, d: int) -> dict[OrbitKey, int]:
    """One entry per place-permutation orbit; injective on ``S(n, d)``."""
    space = TensorSpaceIndex(n, d)
    coords = {}
    for L in _sorted_indices(n, d):
        col = X.column(space.ordinal(L))
        for row, v in col.items():
            M = space.from_ordinal(row)
            key = orbit_key(M, L)
            if tuple(zip(L, M)) == key:
                coords[key] = v
    return coords


@lru_cache(maxsize=None)
def _sorted_indices(n: int, d: int) -> tuple[tuple[int, ...], ...]:
    return tuple(t for t in _all_indices(n, d) if list(t) == sorted(t))


def schur_dim_formula(n: int, d: int) -> int:
    """Number of place-permutation orbits on pairs of multi-indices."""
    return comb(n * n + d - 1, d)


# ---------------------------------------------------------------------------
# codeterminants
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Codeterminant:
    """``xi(I, l) xi(l, J)`` where I, J read the tableaux S, T and l = l(shape)."""

    shape: Weight
    S: SemistandardTableau
    T: SemistandardTableau
    n: int

    @property
    def degree(self) -> int:
        return sum(self.shape)

    @cached_property
    def matrix(self) -> ExactMatrix:
        ell = canonical_index(self.shape)
        d = self.degree
        left = xi_matrix(self.S.reading(), ell, self.n, d).matrix
        right = xi_matrix(ell, self.T.reading(), self.n, d).matrix
        return left @ right

    @cached_property
    def coordinates(self) -> dict[OrbitKey, int]:
        return codeterminant_coordinates(self.S.reading(), canonical_index(self.shape), self.T.reading())


def codeterminant_coordinates(I: MultiIndex, ell: MultiIndex, J: MultiIndex) -> dict[OrbitKey, int]:
    """Orbit coordinates of ``xi(I, ell) xi(ell, J)`` from the single column it needs.

    The product is supported on pairs ``(M, L)`` with ``L`` a rearrangement of
    ``J``; the canonical representatives all sit in column ``L = sorted(J)``.
    """
    L0 = tuple(sorted(J))
    coords: Counter = Counter()
    for K in orbit_column(ell, J, L0):
        for M in orbit_column(I, ell, K):
            key = orbit_key(M, L0)
            if tuple(zip(L0, M)) == key:
                coords[key] += 1
    return dict(coords)


def _coords_job(args):
    return codeterminant_coordinates(*args)


def build_ordinary_schur(n: int, d: int) -> list[Codeterminant]:
    """The codeterminant basis of ``S(n, d)``, grouped by shape in decreasing order."""
    if n < 2 or d < 0:
        raise ValueError(f"need n >= 2 and d >= 0, got n={n}, d={d}")
    out = []
    for lam in enum_dominant(n, d, 0):
        tabs = enum_ssyt(lam, n)
        out.extend(Codeterminant(lam, S, T, n) for S in tabs for T in tabs)
    workers = worker_count()
    if workers > 1 and len(out) > 200:
        jobs = [(c.S.reading(), canonical_index(c.shape), c.T.reading()) for c in out]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for c, coords in zip(out, pool.map(_coords_job, jobs, chunksize=64)):
                c.__dict__["coordinates"] = coords
    return out


def exceeds(shape: Sequence[int], cutoff: int) -> bool:
    return any(p > cutoff for p in shape)


def codeterminant_rank(cods: Iterable[Codeterminant]) -> int:
    ech = Echelon()
    for c in cods:
        ech.insert(c.coordinates)
    return ech.rank


def basis_dump(cods: Iterable[Codeterminant]) -> str:
    """One ``lambda | S | T`` header per codeterminant, each followed by its matrix triplets."""
    blocks = []
    for c in cods:
        head = f"{format_weight(c.shape)} | {format_tableau(c.S)} | {format_tableau(c.T)}"
        blocks.append(head + "\n" + c.matrix.to_triplets())
    return "\n".join(blocks) + "\n"


def quotient_degree(n: int, r: int, s: int) -> int:
    return r + (n - 1) * s


def cell_ideal_dim(n: int, d: int, cutoff: int, r: int | None = None, s: int | None = None) -> int:
    """Rank of the codeterminants whose shape has a part exceeding ``cutoff``.

    When ``r`` and ``s`` are given they must satisfy ``d = r + (n-1)s`` and
    ``cutoff = r + s``.
    """
    if r is not None and s is not None:
        if d != quotient_degree(n, r, s):
            raise ValueError(f"d={d} differs from r+(n-1)s={quotient_degree(n, r, s)}")
        if cutoff != r + s:
            raise ValueError(f"cutoff {cutoff} differs from r+s={r + s}")
    return codeterminant_rank(c for c in build_ordinary_schur(n, d) if exceeds(c.shape, cutoff))


# ---------------------------------------------------------------------------
# rational Schur algebras
# ---------------------------------------------------------------------------


@dataclass
class CellularQuotient:
    """``S(n, d) / J`` with J spanned by codeterminants having a part above ``cutoff``."""

    n: int
    d: int
    cutoff: int
    codeterminants: list[Codeterminant]
    kept: list[int]
    excluded: list[int]
    full_rank: int
    kernel_dim: int

    @property
    def dim(self) -> int:
        return self.full_rank - self.kernel_dim

    @cached_property
    def _coordinatizer(self) -> Coordinatizer:
        return Coordinatizer([c.coordinates for c in self.codeterminants])

    def expand(self, X: ExactMatrix) -> dict[int, object]:
        """Coefficients of an element of ``S(n, d)`` in the full codeterminant basis."""
        return self._coordinatizer.coordinates(schur_coordinates(X, self.n, self.d))

    def reduce(self, coeffs: dict[int, object]) -> dict[int, object]:
        """Drop the ideal terms; keys are positions in ``kept``."""
        pos = {idx: k for k, idx in enumerate(self.kept)}
        return {pos[i]: c for i, c in coeffs.items() if i in pos}

    def multiply(self, a: int, b: int) -> dict[int, object]:
        """Structure constants of kept basis elements ``a``, ``b`` (positions in ``kept``)."""
        A = self.codeterminants[self.kept[a]].matrix
        B = self.codeterminants[self.kept[b]].matrix
        return self.reduce(self.expand(A @ B))

    def structure_constants(self) -> dict[tuple[int, int], dict[int, object]]:
        m = len(self.kept)
        return {(a, b): self.multiply(a, b) for a in range(m) for b in range(m)}


@dataclass
class RationalSchurAlgebra:
    n: int
    r: int
    s: int
    realization: str  # "quotient" | "envelope" | "centralizer"
    dim: int
    weyl_data: list[tuple[Weight, int]]
    span: AlgebraSpan | None = None
    quotient: CellularQuotient | None = None

    @property
    def expected_dim(self) -> int:
        return sum(k * k for _, k in self.weyl_data)


def rational_weyl_data(n: int, r: int, s: int) -> list[tuple[Weight, int]]:
    return [(lam, weyl_dim(lam, n)) for lam in enum_dominant(n, r, s)]


def build_rational_quotient(n: int, r: int, s: int) -> RationalSchurAlgebra:
    """``S(n;r,s)`` as the cellular quotient of ``S(n, r+(n-1)s)``."""
    if n < 2 or r < 0 or s < 0:
        raise ValueError(f"need n >= 2 and r, s >= 0, got ({n};{r},{s})")
    d = quotient_degree(n, r, s)
    cutoff = r + s
    cods = build_ordinary_schur(n, d)
    excluded = [i for i, c in enumerate(cods) if exceeds(c.shape, cutoff)]
    kept = [i for i, c in enumerate(cods) if not exceeds(c.shape, cutoff)]
    ech = Echelon()
    for i in excluded:
        ech.insert(cods[i].coordinates)
    kernel_dim = ech.rank
    for i in kept:
        ech.insert(cods[i].coordinates)
    quotient = CellularQuotient(n, d, cutoff, cods, kept, excluded, ech.rank, kernel_dim)
    cells = Counter(cods[i].shape for i in kept)
    weyl_data = []
    for lam in sorted(cells, reverse=True):
        size = isqrt(cells[lam])
        if size * size != cells[lam]:
            raise ArithmeticError(f"cell {lam} has {cells[lam]} elements, not a square")
        weyl_data.append((shift(lam, -s), size))
    return RationalSchurAlgebra(n, r, s, "quotient", quotient.dim, weyl_data, quotient=quotient)


def unit_action(i: int, j: int, n: int, r: int, s: int = 0) -> ExactMatrix:
    """The matrix unit ``X_ij`` of gl_n acting on ``E^{r,s}`` by the Leibniz rule.

    ``X_ij v_k = δ_jk v_i`` on covariant slots and ``X_ij v'_k = -δ_ik v'_j``
    on contravariant slots.
    """
    space = TensorSpaceIndex(n, r, s)
    entries: dict[tuple[int, int], int] = {}
    for L in _all_indices(n, r + s):
        col = space.ordinal(L)
        for pos, x in enumerate(L):
            if pos < r:
                if x != j:
                    continue
                M, sign = L[:pos] + (i,) + L[pos + 1 :], 1
            else:
                if x != i:
                    continue
                M, sign = L[:pos] + (j,) + L[pos + 1 :], -1
            key = (space.ordinal(M), col)
            entries[key] = entries.get(key, 0) + sign
    return ExactMatrix(space.dim, space.dim, entries)


@dataclass(frozen=True)
class HyperGenerators:
    e: list[ExactMatrix]
    f: list[ExactMatrix]
    H: list[ExactMatrix]

    def as_list(self) -> list[ExactMatrix]:
        return self.e + self.f + self.H


@lru_cache(maxsize=32)
def hyper_generators(n: int, r: int, s: int = 0) -> HyperGenerators:
    e = [unit_action(i, i + 1, n, r, s) for i in range(1, n)]
    f = [unit_action(i + 1, i, n, r, s) for i in range(1, n)]
    H = [unit_action(i, i, n, r, s) for i in range(1, n + 1)]
    return HyperGenerators(e, f, H)


def mixed_generator_matrices(n: int, r: int, s: int) -> list[ExactMatrix]:
    """``[e_1..e_{n-1}, f_1..f_{n-1}, H_1..H_n]`` acting on ``E^{r,s}``."""
    return hyper_generators(n, r, s).as_list()


def build_rational_envelope(n: int, r: int, s: int) -> RationalSchurAlgebra:
    """``S(n;r,s)`` as the algebra generated by gl_n acting on mixed tensor space."""
    if n < 2 or r < 0 or s < 0:
        raise ValueError(f"need n >= 2 and r, s >= 0, got ({n};{r},{s})")
    gens = mixed_generator_matrices(n, r, s)
    span = span_closure(gens, with_identity=True, size=n ** (r + s))
    return RationalSchurAlgebra(n, r, s, "envelope", span.dim, rational_weyl_data(n, r, s), span=span)


def _vector_closure(start: dict, operators: Sequence[ExactMatrix]) -> int:
    """Dimension of the smallest operator-stable subspace containing ``start``."""
    ech = Echelon()
    ech.insert(start)
    queue = [start]
    while queue:
        v = queue.pop()
        for op in operators:
            w = op.apply(v)
            if w and ech.insert(w):
                queue.append(w)
    return ech.rank


def highest_weight_constituents(n: int, r: int, s: int) -> dict[Weight, tuple[int, int]]:
    """Irreducible constituents of ``E^{r,s}`` found from highest weight vectors.

    Returns ``{weight: (multiplicity, dimension)}`` where multiplicity is the
    dimension of the joint kernel of the ``e_i`` on that weight space and
    dimension is that of the module generated by one such vector.
    """
    space = TensorSpaceIndex(n, r, s)
    gens = hyper_generators(n, r, s)
    by_weight: dict[Weight, list[int]] = {}
    for t in _all_indices(n, r + s):
        by_weight.setdefault(space.weight(t), []).append(space.ordinal(t))
    out = {}
    for lam in sorted(by_weight, reverse=True):
        if any(a < b for a, b in zip(lam, lam[1:])):
            continue
        cols = by_weight[lam]
        images = []
        for c in cols:
            img = {}
            for k, e in enumerate(gens.e):
                for row, v in e.column(c).items():
                    img[(k, row)] = v
            images.append(img)
        kernel = nullspace(images)
        if not kernel:
            continue
        hw = {cols[i]: v for i, v in kernel[0].items()}
        out[lam] = (len(kernel), _vector_closure(hw, gens.f))
    return out


def opp_dimension_check(n: int, r: int, s: int, method: str = "envelope") -> bool:
    """Compare ``S(n;r,s)`` with ``S(n;s,r)``: dimensions and dual Weyl data.

    ``method`` picks how the dimensions are obtained: ``"envelope"``,
    ``"quotient"`` or ``"weyl"`` (sum of squared Weyl dimensions).
    """
    builders = {
        "envelope": lambda a, b: build_rational_envelope(n, a, b).dim,
        "quotient": lambda a, b: build_rational_quotient(n, a, b).dim,
        "weyl": lambda a, b: sum(k * k for _, k in rational_weyl_data(n, a, b)),
    }
    if method not in builders:
        raise ValueError(f"unknown method {method!r}")
    dim_rs = builders[method](r, s)
    dim_sr = builders[method](s, r)
    left = Counter(rational_weyl_data(n, r, s))
    dual = Counter((tuple(-x for x in reversed(lam)), k) for lam, k in rational_weyl_data(n, s, r))
    return dim_rs == dim_sr and left == dual


def swap_slots(n: int, r: int, s: int) -> ExactMatrix:
    """Permutation ``E^{r,s} -> E^{s,r}`` moving the last ``s`` slots to the front."""
    src = TensorSpaceIndex(n, r, s)
    dst = TensorSpaceIndex(n, s, r)
    entries = {}
    for t in _all_indices(n, r + s):
        entries[(dst.ordinal(t[r:] + t[:r]), src.ordinal(t))] = 1
    return ExactMatrix(src.dim, src.dim, entries)


def opp_transport(n: int, r: int, s: int) -> tuple[AlgebraSpan, list[ExactMatrix]]:
    """Envelope of ``E^{s,r}`` and the transposed envelope of ``E^{r,s}`` moved onto it.

    ``E^{s,r}`` is the dual of ``E^{r,s}`` with slots reordered, so ``X -> P X^T P^-1``
    should carry the first algebra anti-isomorphically onto the second.
    """
    P = swap_slots(n, r, s)
    Pinv = P.transpose()
    env_rs = build_rational_envelope(n, r, s).span
    env_sr = build_rational_envelope(n, s, r).span
    moved = [P @ b.transpose() @ Pinv for b in env_rs.basis]
    return env_sr, moved
