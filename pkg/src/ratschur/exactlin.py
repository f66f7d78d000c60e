"""Exact sparse linear algebra over the rationals.

Matrices are sparse ``{row: {col: value}}`` maps whose values are Python
``int`` or ``fractions.Fraction``; integral values are always stored as
``int``.  Elimination runs on integer rows (denominators are cleared
up front and every stored row is kept primitive), so no ``Fraction``
arithmetic happens on the hot path.

Flattening convention (used by every echelon certificate in the package):
entry ``(i, j)`` of an ``nrows x ncols`` matrix goes to ``i * ncols + j``.
"""

from __future__ import annotations

import heapq
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Iterable, Iterator, Mapping, Sequence

Scalar = int | Fraction
Vector = dict  # sparse: orderable key -> Scalar


def normalize(value) -> Scalar:
    """Return ``value`` as an exact scalar, collapsing integral fractions to int."""
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, str):
        return normalize(Fraction(value))
    if isinstance(value, float):
        raise TypeError("floating point values are not exact scalars")
    return normalize(Fraction(value))


def format_scalar(value: Scalar) -> str:
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


class ExactMatrix:
    """Immutable sparse matrix over Q.  ``@`` is the matrix product."""

    __slots__ = ("nrows", "ncols", "_rows", "_hash")

    def __init__(self, nrows: int, ncols: int, entries: Mapping[tuple[int, int], object] | None = None):
        if nrows < 0 or ncols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        self.nrows = nrows
        self.ncols = ncols
        rows: dict[int, dict[int, Scalar]] = {}
        for (i, j), v in (entries or {}).items():
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise IndexError(f"entry ({i}, {j}) outside a {nrows}x{ncols} matrix")
            v = normalize(v)
            if v:
                rows.setdefault(i, {})[j] = v
        self._rows = rows
        self._hash = None

    @classmethod
    def _from_rows(cls, nrows: int, ncols: int, rows: dict[int, dict[int, Scalar]]) -> "ExactMatrix":
        # trusted constructor: rows hold no zeros and no empty dicts
        m = cls.__new__(cls)
        m.nrows, m.ncols, m._rows, m._hash = nrows, ncols, rows, None
        return m

    @classmethod
    def zeros(cls, nrows: int, ncols: int | None = None) -> "ExactMatrix":
        return cls(nrows, nrows if ncols is None else ncols)

    @classmethod
    def identity(cls, k: int) -> "ExactMatrix":
        return cls._from_rows(k, k, {i: {i: 1} for i in range(k)})

    @classmethod
    def unit(cls, k: int, i: int, j: int) -> "ExactMatrix":
        return cls(k, k, {(i, j): 1})

    @classmethod
    def diagonal(cls, values: Sequence) -> "ExactMatrix":
        k = len(values)
        return cls(k, k, {(i, i): v for i, v in enumerate(values)})

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence]) -> "ExactMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        return cls(nrows, ncols, {(i, j): v for i, row in enumerate(rows) for j, v in enumerate(row)})

    # -- access -----------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self._rows.values())

    def __getitem__(self, key: tuple[int, int]) -> Scalar:
        i, j = key
        return self._rows.get(i, {}).get(j, 0)

    def items(self) -> Iterator[tuple[tuple[int, int], Scalar]]:
        for i in sorted(self._rows):
            row = self._rows[i]
            for j in sorted(row):
                yield (i, j), row[j]

    def row(self, i: int) -> dict[int, Scalar]:
        return dict(self._rows.get(i, {}))

    def column(self, j: int) -> dict[int, Scalar]:
        return {i: r[j] for i, r in self._rows.items() if j in r}

    def to_dense(self) -> list[list[Scalar]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for (i, j), v in self.items():
            out[i][j] = v
        return out

    def flatten(self) -> dict[int, Scalar]:
        """Row-major sparse vector of length ``nrows * ncols``."""
        c = self.ncols
        return {i * c + j: v for i, row in self._rows.items() for j, v in row.items()}

    @classmethod
    def unflatten(cls, vec: Mapping[int, object], nrows: int, ncols: int) -> "ExactMatrix":
        return cls(nrows, ncols, {divmod(k, ncols): v for k, v in vec.items()})

    # -- arithmetic -------------------------------------------------------

    def _check_same_shape(self, other: "ExactMatrix") -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_same_shape(other)
        rows = {i: dict(r) for i, r in self._rows.items()}
        for i, r in other._rows.items():
            dst = rows.setdefault(i, {})
            for j, v in r.items():
                w = dst.get(j, 0) + v
                if w:
                    dst[j] = normalize(w) if isinstance(w, Fraction) else w
                else:
                    dst.pop(j, None)
            if not dst:
                del rows[i]
        return ExactMatrix._from_rows(self.nrows, self.ncols, rows)

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix._from_rows(
            self.nrows, self.ncols, {i: {j: -v for j, v in r.items()} for i, r in self._rows.items()}
        )

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self + (-other)

    def __mul__(self, scalar) -> "ExactMatrix":
        if isinstance(scalar, ExactMatrix):
            raise TypeError("use @ for the matrix product")
        c = normalize(scalar)
        if not c:
            return ExactMatrix(self.nrows, self.ncols)
        return ExactMatrix._from_rows(
            self.nrows,
            self.ncols,
            {i: {j: normalize(c * v) for j, v in r.items()} for i, r in self._rows.items()},
        )

    __rmul__ = __mul__

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        orows = other._rows
        rows: dict[int, dict[int, Scalar]] = {}
        for i, r in self._rows.items():
            acc: dict[int, Scalar] = {}
            for k, a in r.items():
                ork = orows.get(k)
                if ork is None:
                    continue
                for j, b in ork.items():
                    acc[j] = acc.get(j, 0) + a * b
            acc = {j: normalize(v) for j, v in acc.items() if v}
            if acc:
                rows[i] = acc
        return ExactMatrix._from_rows(self.nrows, other.ncols, rows)

    def __pow__(self, k: int) -> "ExactMatrix":
        if self.nrows != self.ncols or k < 0:
            raise ValueError("powers need a square matrix and k >= 0")
        out = ExactMatrix.identity(self.nrows)
        for _ in range(k):
            out = out @ self
        return out

    def apply(self, vec: Mapping[int, Scalar]) -> dict[int, Scalar]:
        """Matrix times sparse column vector."""
        out: dict[int, Scalar] = {}
        for i, r in self._rows.items():
            acc = 0
            for j, v in r.items():
                w = vec.get(j)
                if w:
                    acc += v * w
            if acc:
                out[i] = normalize(acc)
        return out

    def transpose(self) -> "ExactMatrix":
        rows: dict[int, dict[int, Scalar]] = {}
        for i, r in self._rows.items():
            for j, v in r.items():
                rows.setdefault(j, {})[i] = v
        return ExactMatrix._from_rows(self.ncols, self.nrows, rows)

    @property
    def T(self) -> "ExactMatrix":
        return self.transpose()

    def trace(self) -> Scalar:
        return normalize(sum(r.get(i, 0) for i, r in self._rows.items()))

    def is_zero(self) -> bool:
        return not self._rows

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def commutator(self, other: "ExactMatrix") -> "ExactMatrix":
        return self @ other - other @ self

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.shape, frozenset((k, v) for k, v in self.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"ExactMatrix({self.nrows}x{self.ncols}, nnz={self.nnz})"

    # -- exchange format --------------------------------------------------

    def to_triplets(self) -> str:
        """Line-oriented ``row col num/den`` dump (header line ``nrows ncols``)."""
        lines = [f"{self.nrows} {self.ncols}"]
        lines += [f"{i} {j} {format_scalar(v)}" for (i, j), v in self.items()]
        return "\n".join(lines)

    @classmethod
    def from_triplets(cls, text: str) -> "ExactMatrix":
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty triplet dump")
        nrows, ncols = (int(t) for t in lines[0].split())
        entries = {}
        for ln in lines[1:]:
            i, j, v = ln.split()
            entries[(int(i), int(j))] = Fraction(v)
        return cls(nrows, ncols, entries)


def linear_combination(coeffs: Iterable[tuple[object, ExactMatrix]], shape: tuple[int, int]) -> ExactMatrix:
    """Sum of ``c * M`` over ``(c, M)`` pairs."""
    rows: dict[int, dict[int, Scalar]] = {}
    for c, m in coeffs:
        c = normalize(c)
        if not c:
            continue
        for i, r in m._rows.items():
            dst = rows.setdefault(i, {})
            for j, v in r.items():
                dst[j] = dst.get(j, 0) + c * v
    clean = {}
    for i, r in rows.items():
        r = {j: normalize(v) for j, v in r.items() if v}
        if r:
            clean[i] = r
    return ExactMatrix._from_rows(shape[0], shape[1], clean)


# ---------------------------------------------------------------------------
# integer row echelon
# ---------------------------------------------------------------------------


def _primitive(vec: Mapping[Hashable, Scalar]) -> dict:
    """Scale a rational sparse vector to a primitive integer vector."""
    den = 1
    for v in vec.values():
        if isinstance(v, Fraction):
            den = math.lcm(den, v.denominator)
    out = {k: int(v * den) for k, v in vec.items() if v}
    g = math.gcd(*out.values()) if out else 1
    if g > 1:
        out = {k: v // g for k, v in out.items()}
    return out


class Echelon:
    """Incrementally maintained echelon form of a growing set of sparse vectors.

    Rows are primitive integer vectors.  A new row picks as pivot its entry of
    smallest magnitude (ties broken by smallest key), which keeps coefficient
    growth down.  Reduction eliminates pivots in insertion order: a stored row
    never contains the pivot of an earlier row, so one pass suffices.
    """

    def __init__(self):
        self._rows: list[dict] = []
        self._pivots: list = []
        self._rank_of: dict = {}  # pivot key -> insertion rank

    @property
    def rank(self) -> int:
        return len(self._rows)

    def __len__(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> list:
        return list(self._pivots)

    def rows(self) -> list[dict]:
        return [dict(r) for r in self._rows]

    def reduce(self, vec: Mapping) -> dict:
        """Return an integer multiple of ``vec`` minus its projection onto the rows."""
        v = _primitive(vec)
        if not self._rows:
            return v
        rank_of = self._rank_of
        heap = [rank_of[k] for k in v if k in rank_of]
        heapq.heapify(heap)
        seen = set(heap)
        while heap:
            k = heapq.heappop(heap)
            piv = self._pivots[k]
            c = v.get(piv)
            if not c:
                continue
            row = self._rows[k]
            p = row[piv]
            g = math.gcd(p, c)
            a, b = p // g, c // g
            if a != 1:
                for key in v:
                    v[key] *= a
            for key, w in row.items():
                nv = v.get(key, 0) - b * w
                if nv:
                    v[key] = nv
                    rk = rank_of.get(key)
                    if rk is not None and rk > k and rk not in seen:
                        seen.add(rk)
                        heapq.heappush(heap, rk)
                else:
                    v.pop(key, None)
        if v:
            g = math.gcd(*v.values())
            if g > 1:
                v = {key: w // g for key, w in v.items()}
        return v

    def insert(self, vec: Mapping) -> bool:
        """Add ``vec``; return True iff it was independent of the current rows."""
        v = self.reduce(vec)
        if not v:
            return False
        self._add_reduced(v)
        return True

    def _add_reduced(self, v: dict) -> None:
        piv = min(v, key=lambda key: (abs(v[key]), key))
        if v[piv] < 0:
            v = {key: -w for key, w in v.items()}
        self._rank_of[piv] = len(self._rows)
        self._pivots.append(piv)
        self._rows.append(v)

    def contains(self, vec: Mapping) -> bool:
        return not self.reduce(vec)


def rank_of_vectors(vectors: Iterable[Mapping]) -> int:
    """Rank of sparse vectors; shortest vectors are eliminated first."""
    vecs = sorted((dict(v) for v in vectors), key=len)
    ech = Echelon()
    for v in vecs:
        ech.insert(v)
    return ech.rank


def rank(rows: Sequence[ExactMatrix]) -> int:
    """Rank over Q of the row-major flattenings of equally shaped matrices."""
    rows = list(rows)
    if rows:
        shape = rows[0].shape
        for m in rows:
            if m.shape != shape:
                raise ValueError(f"shape mismatch: {shape} vs {m.shape}")
    return rank_of_vectors(m.flatten() for m in rows)


def canonical_rref(vectors: Iterable[Mapping]) -> list[dict]:
    """Unique reduced row echelon basis of the span (leading entries 1, sorted by pivot)."""
    rows: dict = {}  # pivot key -> Fraction row with leading 1
    for vec in vectors:
        v = {k: Fraction(x) for k, x in vec.items() if x}
        while v:
            lead = min(v)
            if lead in rows:
                c = v[lead]
                for k, w in rows[lead].items():
                    nv = v.get(k, 0) - c * w
                    if nv:
                        v[k] = nv
                    else:
                        v.pop(k, None)
                continue
            inv = 1 / v[lead]
            rows[lead] = {k: w * inv for k, w in v.items()}
            break
    # back substitution to reduced form
    for piv in sorted(rows, reverse=True):
        prow = rows[piv]
        for other, orow in rows.items():
            if other != piv and piv in orow:
                c = orow[piv]
                for k, w in prow.items():
                    nv = orow.get(k, 0) - c * w
                    if nv:
                        orow[k] = nv
                    else:
                        orow.pop(k, None)
    return [{k: normalize(v) for k, v in rows[p].items()} for p in sorted(rows)]


def nullspace(vectors: Sequence[Mapping]) -> list[dict[int, Scalar]]:
    """Basis of ``{c : sum_i c[i] * vectors[i] = 0}`` as sparse coefficient dicts."""
    # one equation per coordinate, unknown i <-> column i
    eqs: dict = {}
    for i, v in enumerate(vectors):
        for k, x in v.items():
            if x:
                eqs.setdefault(k, {})[i] = x
    rref = canonical_rref(sorted(eqs.values(), key=len))
    pivot_cols = {min(r): r for r in rref}
    basis = []
    for free in range(len(vectors)):
        if free in pivot_cols:
            continue
        c: dict[int, Scalar] = {free: 1}
        for p, r in pivot_cols.items():
            x = r.get(free)
            if x:
                c[p] = normalize(-x)
        basis.append(c)
    return basis


class Coordinatizer:
    """Express vectors in terms of a fixed list of independent basis vectors."""

    def __init__(self, basis: Sequence[Mapping]):
        self._rows: dict = {}  # pivot -> (row, combo), row[pivot] == 1
        self._order: list = []
        for idx, b in enumerate(basis):
            v = {k: Fraction(x) for k, x in b.items() if x}
            combo = {idx: Fraction(1)}
            v, combo = self._reduce(v, combo, sign=-1)
            if not v:
                raise ValueError(f"basis vector {idx} is linearly dependent on its predecessors")
            piv = min(v)
            inv = 1 / v[piv]
            self._rows[piv] = ({k: w * inv for k, w in v.items()}, {k: w * inv for k, w in combo.items()})
            self._order.append(piv)
        self.dim = len(basis)

    def _reduce(self, v: dict, combo: dict, sign: int):
        changed = True
        while changed:
            changed = False
            for piv in self._order:
                c = v.get(piv)
                if not c:
                    continue
                row, rcombo = self._rows[piv]
                for k, w in row.items():
                    nv = v.get(k, 0) - c * w
                    if nv:
                        v[k] = nv
                    else:
                        v.pop(k, None)
                for k, w in rcombo.items():
                    nv = combo.get(k, 0) + sign * c * w
                    if nv:
                        combo[k] = nv
                    else:
                        combo.pop(k, None)
                changed = True
        return v, combo

    def coordinates(self, vec: Mapping) -> dict[int, Scalar]:
        """Coefficients ``c`` with ``vec == sum c[i] * basis[i]``; raises if outside the span."""
        v = {k: Fraction(x) for k, x in vec.items() if x}
        v, acc = self._reduce(v, {}, sign=1)
        if v:
            raise ValueError("vector is not in the span of the basis")
        return {k: normalize(w) for k, w in acc.items() if w}


# ---------------------------------------------------------------------------
# algebra spans
# ---------------------------------------------------------------------------


@dataclass
class AlgebraSpan:
    """Linearly independent square matrices, optionally known closed under product."""

    ambient_dim: int
    basis: list[ExactMatrix] = field(default_factory=list)
    echelon: Echelon = field(default_factory=Echelon)
    closed: bool = False

    @property
    def dim(self) -> int:
        return len(self.basis)

    def add(self, m: ExactMatrix) -> bool:
        if m.shape != (self.ambient_dim, self.ambient_dim):
            raise ValueError(f"expected a {self.ambient_dim}-square matrix, got {m.shape}")
        if self.echelon.insert(m.flatten()):
            self.basis.append(m)
            return True
        return False

    def contains(self, m: ExactMatrix) -> bool:
        return self.echelon.contains(m.flatten())

    def certificate(self) -> list[dict]:
        return canonical_rref(m.flatten() for m in self.basis)

    def coordinates(self, m: ExactMatrix) -> dict[int, Scalar]:
        if not hasattr(self, "_coords"):
            self._coords = Coordinatizer([b.flatten() for b in self.basis])
        return self._coords.coordinates(m.flatten())

    def product_residual_rank(self) -> int:
        """Number of independent directions products of basis pairs add (0 iff closed)."""
        ech = Echelon()
        for b in self.basis:
            ech.insert(b.flatten())
        base = ech.rank
        for a in self.basis:
            for b in self.basis:
                ech.insert((a @ b).flatten())
        return ech.rank - base

    def structure_constants(self) -> dict[tuple[int, int], dict[int, Scalar]]:
        return {
            (i, j): self.coordinates(a @ b)
            for i, a in enumerate(self.basis)
            for j, b in enumerate(self.basis)
        }


def _check_square(generators: Sequence[ExactMatrix]) -> int | None:
    size = None
    for g in generators:
        if not g.is_square():
            raise ValueError(f"non-square generator of shape {g.shape}")
        if size is None:
            size = g.nrows
        elif g.nrows != size:
            raise ValueError("generators have different sizes")
    return size


def span_closure(
    generators: Sequence[ExactMatrix], with_identity: bool = True, size: int | None = None
) -> AlgebraSpan:
    """Basis of the (unital) subalgebra generated by ``generators``.

    Words are explored breadth-first by length: every new basis element is
    multiplied on the left by every generator and kept if it raises the rank.
    """
    gsize = _check_square(generators)
    if gsize is None:
        if size is None:
            raise ValueError("size is required when there are no generators")
        gsize = size
    elif size is not None and size != gsize:
        raise ValueError("size disagrees with the generators")
    span = AlgebraSpan(ambient_dim=gsize)
    queue: deque[ExactMatrix] = deque()
    seeds = [ExactMatrix.identity(gsize)] if with_identity else list(generators)
    for m in seeds:
        if span.add(m):
            queue.append(m)
    while queue:
        x = queue.popleft()
        for g in generators:
            y = g @ x
            if span.add(y):
                queue.append(y)
    span.closed = True
    return span


def commutant(generators: Sequence[ExactMatrix], size: int | None = None) -> AlgebraSpan:
    """Basis of ``{X : X g == g X for every generator g}``.

    Null spaces are intersected one generator at a time, so the working set is
    the current solution space rather than one stacked system.
    """
    gsize = _check_square(generators)
    if gsize is None:
        if size is None:
            raise ValueError("size is required when there are no generators")
        gsize = size
    shape = (gsize, gsize)
    candidates = [ExactMatrix.unit(gsize, i, j) for i in range(gsize) for j in range(gsize)]
    for g in generators:
        comms = [(x @ g - g @ x).flatten() for x in candidates]
        kernel = nullspace(comms)
        candidates = [linear_combination(((c, candidates[i]) for i, c in vec.items()), shape) for vec in kernel]
    span = AlgebraSpan(ambient_dim=gsize)
    for x in candidates:
        span.add(x)
    span.closed = True
    return span
