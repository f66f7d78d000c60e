"""The walled Brauer algebra and its action on mixed tensor space.

Vertices are ``("t", k)`` / ``("b", k)`` for the top and bottom rows, with
labels ``1..r`` left of the wall and ``-1..-s`` right of it.  Internally a
diagram is an involution on positions ``0..2(r+s)-1``: top row first, then
bottom row, each ordered ``1..r, -1..-s`` (so column ``c`` is label ``c+1``
for ``c < r`` and ``-(c-r+1)`` otherwise).

Products stack the first diagram on top of the second.  The algebra acts on
the right of ``E^{r,s}``: input indices enter at the top row and outputs
leave at the bottom.  ``action_matrix`` stores that right action with row
semantics, ``tau[I, J]`` = coefficient of ``v_J`` in ``v_I · D``, which makes
it multiplicative: ``tau(D1 D2) = tau(D1) @ tau(D2)``.  The same operator on
column vectors is the transpose (``action_operator``).
"""

from __future__ import annotations

import random
import re
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from math import factorial
from typing import Mapping, Sequence

from .exactlin import ExactMatrix, commutant, normalize, span_closure
from .schur import TensorSpaceIndex, _all_indices, mixed_generator_matrices

Vertex = tuple[str, int]
Poly = dict[int, object]  # degree in x -> rational coefficient


def _label(c: int, r: int) -> int:
    return c + 1 if c < r else -(c - r + 1)


def _column(label: int, r: int, s: int) -> int:
    if 1 <= label <= r:
        return label - 1
    if -s <= label <= -1:
        return r - label - 1
    raise ValueError(f"label {label} outside 1..{r} and -1..-{s}")


@dataclass(frozen=True)
class WalledDiagram:
    r: int
    s: int
    match: tuple[int, ...]

    def __post_init__(self):
        m = self.r + self.s
        if len(self.match) != 2 * m:
            raise ValueError(f"expected {2 * m} vertices, got {len(self.match)}")
        for p, q in enumerate(self.match):
            if not 0 <= q < 2 * m or q == p or self.match[q] != p:
                raise ValueError("edges must form a perfect matching")
            if p < q:
                same_row = (p < m) == (q < m)
                p_left = (p % m) < self.r
                q_left = (q % m) < self.r
                if same_row and p_left == q_left:
                    raise ValueError("horizontal edges must cross the wall")
                if not same_row and p_left != q_left:
                    raise ValueError("vertical edges must not cross the wall")

    @property
    def size(self) -> int:
        return self.r + self.s

    def vertex(self, p: int) -> Vertex:
        m = self.size
        return ("t" if p < m else "b", _label(p % m, self.r))

    def position(self, v: Vertex) -> int:
        row, label = v
        c = _column(label, self.r, self.s)
        return c if row == "t" else c + self.size

    def edges(self) -> list[tuple[Vertex, Vertex]]:
        return [(self.vertex(p), self.vertex(q)) for p, q in enumerate(self.match) if p < q]

    def horizontal_count(self) -> int:
        m = self.size
        return sum(1 for p, q in enumerate(self.match) if p < q < m)

    def flip(self) -> "WalledDiagram":
        """Mirror top and bottom rows."""
        m = self.size
        swap = lambda p: p + m if p < m else p - m
        out = [0] * (2 * m)
        for p, q in enumerate(self.match):
            out[swap(p)] = swap(q)
        return WalledDiagram(self.r, self.s, tuple(out))

    def __str__(self) -> str:
        return format_diagram(self)

    def __mul__(self, other: "WalledDiagram") -> "DiagramElement":
        return DiagramElement.of(self) * DiagramElement.of(other)


def format_diagram(D: WalledDiagram) -> str:
    return ", ".join(f"{a[0]}{a[1]}-{b[0]}{b[1]}" for a, b in D.edges())


_EDGE = re.compile(r"^\s*([tb])(-?\d+)\s*-\s*([tb])(-?\d+)\s*$")


def parse_diagram(text: str, r: int, s: int) -> WalledDiagram:
    m = r + s
    match = [-1] * (2 * m)
    probe = WalledDiagram.__new__(WalledDiagram)
    object.__setattr__(probe, "r", r)
    object.__setattr__(probe, "s", s)
    for chunk in text.split(","):
        if not chunk.strip():
            continue
        hit = _EDGE.match(chunk)
        if not hit:
            raise ValueError(f"malformed edge {chunk.strip()!r}; expected e.g. 't1-b1'")
        p = probe.position((hit.group(1), int(hit.group(2))))
        q = probe.position((hit.group(3), int(hit.group(4))))
        if match[p] != -1 or match[q] != -1:
            raise ValueError(f"vertex used twice in {text!r}")
        match[p], match[q] = q, p
    if -1 in match:
        raise ValueError(f"not every vertex is matched in {text!r}")
    return WalledDiagram(r, s, tuple(match))


# -- named diagrams -----------------------------------------------------------


def identity_diagram(r: int, s: int) -> WalledDiagram:
    m = r + s
    return WalledDiagram(r, s, tuple(list(range(m, 2 * m)) + list(range(m))))


def permutation_diagram(sigma: Sequence[int], tau: Sequence[int], r: int, s: int) -> WalledDiagram:
    """``t_sigma t'_tau``: top ``i`` joined to bottom ``sigma(i)`` left of the wall,
    top ``-j`` to bottom ``-tau(j)`` right of it (one-line notation, 1-based)."""
    if sorted(sigma) != list(range(1, r + 1)) or sorted(tau) != list(range(1, s + 1)):
        raise ValueError("sigma and tau must be permutations of 1..r and 1..s")
    images = [sigma[c] - 1 for c in range(r)] + [r + tau[c] - 1 for c in range(s)]
    return _from_column_map(images, r, s)


def _from_column_map(images: Sequence[int], r: int, s: int) -> WalledDiagram:
    m = r + s
    match = [0] * (2 * m)
    for c, b in enumerate(images):
        match[c] = m + b
        match[m + b] = c
    return WalledDiagram(r, s, tuple(match))


def compose_permutations(sigma: Sequence[int], tau: Sequence[int]) -> tuple[int, ...]:
    """``sigma`` followed by ``tau``: i -> tau(sigma(i)).  Then t_sigma t_tau = t_{compose(sigma, tau)}."""
    return tuple(tau[x - 1] for x in sigma)


def contraction(i: int, j: int, r: int, s: int) -> WalledDiagram:
    """``c_{i,-j}``: arcs joining ``i`` and ``-j`` on both rows, every other column vertical."""
    m = r + s
    a, b = _column(i, r, s), _column(-j, r, s)
    match = list(identity_diagram(r, s).match)
    match[a], match[b] = b, a
    match[m + a], match[m + b] = m + b, m + a
    return WalledDiagram(r, s, tuple(match))


def enum_diagrams(r: int, s: int) -> list[WalledDiagram]:
    """All (r,s)-diagrams, via permutations of r+s columns with the right side flipped."""
    m = r + s
    out = []
    for perm in permutations(range(m)):
        match = [0] * (2 * m)
        for c, b in enumerate(perm):
            top = c if c < r else m + c
            bot = m + b if b < r else b
            match[top], match[bot] = bot, top
        out.append(WalledDiagram(r, s, tuple(match)))
    return out


# -- composition ------------------------------------------------------------------


def compose(D1: WalledDiagram, D2: WalledDiagram) -> tuple[WalledDiagram, int]:
    """Stack ``D1`` on ``D2``; return the composite and the number of closed loops."""
    if (D1.r, D1.s) != (D2.r, D2.s):
        raise ValueError(f"shape mismatch: ({D1.r},{D1.s}) vs ({D2.r},{D2.s})")
    m = D1.size
    # outer vertices: D1 top = 0..m-1, D2 bottom = m..2m-1 in the result
    # middle vertex c is D1 bottom c and D2 top c
    result = [-1] * (2 * m)
    seen_middle = [False] * m

    def walk(layer: int, p: int) -> int:
        # follow edges starting inside `layer` from position p until an outer vertex
        while True:
            if layer == 1:
                q = D1.match[p]
                if q < m:
                    return q
                c = q - m
                seen_middle[c] = True
                layer, p = 2, c
            else:
                q = D2.match[p]
                if q >= m:
                    return q
                seen_middle[q] = True
                layer, p = 1, q + m

    for c in range(m):
        if result[c] == -1:
            end = walk(1, c)
            result[c], result[end] = end, c
    for c in range(m):
        p = m + c
        if result[p] == -1:
            end = walk(2, p)
            result[p], result[end] = end, p
    loops = 0
    for c in range(m):
        if seen_middle[c]:
            continue
        loops += 1
        # walk the closed cycle through c
        layer, p = 1, c + m
        while True:
            q = D1.match[p] if layer == 1 else D2.match[p]
            mid = q - m if layer == 1 else q
            seen_middle[mid] = True
            if layer == 1:
                layer, p = 2, mid
            else:
                layer, p = 1, mid + m
            if mid == c:
                break
    return WalledDiagram(D1.r, D1.s, tuple(result)), loops


# -- algebra elements --------------------------------------------------------------


def _poly_clean(p: Mapping[int, object]) -> Poly:
    return {k: normalize(v) for k, v in p.items() if v}


def _poly_mul(p: Poly, q: Poly) -> Poly:
    out: dict[int, object] = {}
    for a, u in p.items():
        for b, v in q.items():
            out[a + b] = out.get(a + b, 0) + u * v
    return _poly_clean(out)


def poly_eval(p: Poly, x) -> object:
    return normalize(sum(Fraction(c) * Fraction(x) ** k for k, c in p.items()))


@dataclass(frozen=True)
class DiagramElement:
    """Linear combination of walled diagrams with coefficients in Q[x]."""

    r: int
    s: int
    terms: Mapping[WalledDiagram, Poly] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for D, p in self.terms.items():
            if (D.r, D.s) != (self.r, self.s):
                raise ValueError("diagram shape differs from the element's")
            p = _poly_clean(p)
            if p:
                clean[D] = p
        object.__setattr__(self, "terms", clean)

    @classmethod
    def of(cls, D: WalledDiagram, coeff: Poly | None = None) -> "DiagramElement":
        return cls(D.r, D.s, {D: coeff if coeff is not None else {0: 1}})

    @classmethod
    def one(cls, r: int, s: int) -> "DiagramElement":
        return cls.of(identity_diagram(r, s))

    def _check(self, other: "DiagramElement") -> None:
        if (self.r, self.s) != (other.r, other.s):
            raise ValueError(f"shape mismatch: ({self.r},{self.s}) vs ({other.r},{other.s})")

    def __add__(self, other: "DiagramElement") -> "DiagramElement":
        self._check(other)
        terms = {D: dict(p) for D, p in self.terms.items()}
        for D, p in other.terms.items():
            acc = terms.setdefault(D, {})
            for k, v in p.items():
                acc[k] = acc.get(k, 0) + v
        return DiagramElement(self.r, self.s, terms)

    def scale(self, c: Poly | int | Fraction) -> "DiagramElement":
        c = c if isinstance(c, dict) else {0: c}
        return DiagramElement(self.r, self.s, {D: _poly_mul(p, c) for D, p in self.terms.items()})

    def __mul__(self, other: "DiagramElement") -> "DiagramElement":
        return multiply(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiagramElement):
            return NotImplemented
        return (self.r, self.s) == (other.r, other.s) and dict(self.terms) == dict(other.terms)

    def __hash__(self):
        return hash((self.r, self.s, frozenset((D, frozenset(p.items())) for D, p in self.terms.items())))

    def specialize(self, x) -> dict[WalledDiagram, object]:
        out = {D: poly_eval(p, x) for D, p in self.terms.items()}
        return {D: v for D, v in out.items() if v}

    def to_json(self) -> list[dict]:
        rows = []
        for D in sorted(self.terms, key=lambda d: d.match):
            coeff = {str(k): str(v) for k, v in sorted(self.terms[D].items())}
            rows.append({"diagram": format_diagram(D), "coefficient": coeff})
        return rows


def multiply(a: DiagramElement, b: DiagramElement) -> DiagramElement:
    """Bilinear extension of ``D1 · D2 = x^loops (D1 ∘ D2)``."""
    a._check(b)
    terms: dict[WalledDiagram, dict[int, object]] = {}
    for D1, p in a.terms.items():
        for D2, q in b.terms.items():
            D, loops = compose(D1, D2)
            acc = terms.setdefault(D, {})
            for k, v in _poly_mul(p, q).items():
                acc[k + loops] = acc.get(k + loops, 0) + v
    return DiagramElement(a.r, a.s, terms)


# -- action on mixed tensor space ------------------------------------------------


def generator_matrix(G: WalledDiagram, n: int) -> ExactMatrix:
    """Right action of a permutation diagram or a single contraction ``c_{i,-j}``.

    Permutation diagrams move the index in column ``c`` to column ``pi(c)``;
    a contraction requires equal indices in its two columns and replaces them
    by ``sum_k v_k ⊗ v'_k``.
    """
    m = G.size
    space = TensorSpaceIndex(n, G.r, G.s)
    h = G.horizontal_count()
    entries: dict[tuple[int, int], int] = {}
    if h == 0:
        images = [G.match[c] - m for c in range(m)]
        for I in _all_indices(n, m):
            J = [0] * m
            for c, x in enumerate(I):
                J[images[c]] = x
            entries[(space.ordinal(I), space.ordinal(tuple(J)))] = 1
        return ExactMatrix(space.dim, space.dim, entries)
    arcs = [(p, q) for p, q in enumerate(G.match) if p < q < m]
    if h != 1 or G != contraction(_label(arcs[0][0], G.r), -_label(arcs[0][1], G.r), G.r, G.s):
        raise ValueError("not a generator: expected a permutation diagram or a single c_{i,-j}")
    a, b = arcs[0]
    for I in _all_indices(n, m):
        if I[a] != I[b]:
            continue
        for k in range(1, n + 1):
            J = list(I)
            J[a] = J[b] = k
            entries[(space.ordinal(I), space.ordinal(tuple(J)))] = 1
    return ExactMatrix(space.dim, space.dim, entries)


def factorize(D: WalledDiagram, rng: random.Random | None = None) -> list[WalledDiagram]:
    """Write ``D`` as ``P1 · c ⋯ c · P2`` with permutation diagrams P1, P2 and
    contractions ``c_{r,-1}, c_{r-1,-2}, …`` (a loop-free product).

    The matching of arcs to contraction slots and of through-strands to the
    remaining columns is arbitrary; passing ``rng`` randomizes those choices.
    """
    r, s, m = D.r, D.s, D.size
    top_arcs = [(p, q) for p, q in enumerate(D.match) if p < q < m]
    bot_arcs = [(p - m, q - m) for p, q in enumerate(D.match) if m <= p < q]
    through = [(p, D.match[p] - m) for p in range(m) if D.match[p] >= m]
    k = len(top_arcs)
    if rng is not None:
        rng.shuffle(top_arcs)
        rng.shuffle(bot_arcs)
        rng.shuffle(through)
    slots = [(r - 1 - t, r + t) for t in range(k)]  # columns of c_{r-t,-(t+1)}
    free_left = list(range(r - k))
    free_right = list(range(r + k, m))
    if rng is not None:
        rng.shuffle(free_left)
        rng.shuffle(free_right)
    pi1 = [0] * m
    pi2 = [0] * m
    for (a, b), (sa, sb) in zip(top_arcs, slots):
        pi1[a], pi1[b] = sa, sb
    for (a, b), (sa, sb) in zip(bot_arcs, slots):
        pi2[sa], pi2[sb] = a, b
    for top, bottom in through:
        mid = free_left.pop() if top < r else free_right.pop()
        pi1[top] = mid
        pi2[mid] = bottom
    P1 = _from_column_map(pi1, r, s)
    P2 = _from_column_map(pi2, r, s)
    cs = [contraction(r - t, t + 1, r, s) for t in range(k)]
    if rng is not None:
        rng.shuffle(cs)
    return [P1, *cs, P2]


def action_matrix(D: WalledDiagram, n: int, rng: random.Random | None = None) -> ExactMatrix:
    """``tau(D)`` at ``x = n``: the product of generator actions along a factorization of D."""
    factors = factorize(D, rng)
    out = generator_matrix(factors[0], n)
    for G in factors[1:]:
        out = out @ generator_matrix(G, n)
    return out


def action_matrix_direct(D: WalledDiagram, n: int) -> ExactMatrix:
    """``tau(D)`` from the edges alone: every edge forces its two end indices to agree."""
    m = D.size
    space = TensorSpaceIndex(n, D.r, D.s)
    top_arcs = [(p, q) for p, q in enumerate(D.match) if p < q < m]
    bot_arcs = [(p - m, q - m) for p, q in enumerate(D.match) if m <= p < q]
    through = [(p, D.match[p] - m) for p in range(m) if D.match[p] >= m]
    entries = {}
    for I in _all_indices(n, m):
        if any(I[a] != I[b] for a, b in top_arcs):
            continue
        base = [0] * m
        for top, bottom in through:
            base[bottom] = I[top]
        for ks in _all_indices(n, len(bot_arcs)):
            J = base[:]
            for (a, b), k in zip(bot_arcs, ks):
                J[a] = J[b] = k
            entries[(space.ordinal(I), space.ordinal(tuple(J)))] = 1
    return ExactMatrix(space.dim, space.dim, entries)


def element_action(a: DiagramElement, n: int) -> ExactMatrix:
    dim = n ** (a.r + a.s)
    out = ExactMatrix(dim, dim)
    for D, c in a.specialize(n).items():
        out = out + action_matrix(D, n) * c
    return out


def action_operator(D: WalledDiagram, n: int) -> ExactMatrix:
    """The right action of ``D`` as a matrix acting on column vectors."""
    return action_matrix(D, n).transpose()


def brauer_generators(r: int, s: int) -> list[WalledDiagram]:
    """Adjacent transpositions on each side of the wall plus ``c_{r,-1}`` when r, s >= 1."""
    gens = []
    for i in range(1, r):
        sigma = list(range(1, r + 1))
        sigma[i - 1], sigma[i] = sigma[i], sigma[i - 1]
        gens.append(permutation_diagram(sigma, range(1, s + 1), r, s))
    for j in range(1, s):
        tau = list(range(1, s + 1))
        tau[j - 1], tau[j] = tau[j], tau[j - 1]
        gens.append(permutation_diagram(range(1, r + 1), tau, r, s))
    if r >= 1 and s >= 1:
        gens.append(contraction(r, 1, r, s))
    return gens


def commuting_actions_check(n: int, r: int, s: int) -> bool:
    """Every gl_n generator commutes exactly with every Brauer generator's action."""
    gl = mixed_generator_matrices(n, r, s)
    for D in brauer_generators(r, s):
        B = action_operator(D, n)
        if any(not (X @ B - B @ X).is_zero() for X in gl):
            return False
    return True


@dataclass
class CentralizerReport:
    n: int
    r: int
    s: int
    brauer_image_dim: int  # d1
    brauer_commutant_dim: int  # d2
    gl_commutant_dim: int  # d3
    envelope_dim: int  # d4

    @property
    def hypothesis(self) -> bool:
        return self.n >= self.r + self.s

    @property
    def gl_side_equal(self) -> bool:
        return self.brauer_commutant_dim == self.envelope_dim

    @property
    def brauer_side_equal(self) -> bool:
        return self.gl_commutant_dim == self.brauer_image_dim

    @property
    def faithful(self) -> bool:
        return self.brauer_image_dim == factorial(self.r + self.s)

    @property
    def passed(self) -> bool:
        if not self.hypothesis:
            return True
        return self.gl_side_equal and self.brauer_side_equal and self.faithful

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "s": self.s,
            "d1_brauer_image": self.brauer_image_dim,
            "d2_brauer_commutant": self.brauer_commutant_dim,
            "d3_gl_commutant": self.gl_commutant_dim,
            "d4_envelope": self.envelope_dim,
            "hypothesis_n_ge_r_plus_s": self.hypothesis,
            "d2_eq_d4": self.gl_side_equal,
            "d3_eq_d1": self.brauer_side_equal,
            "faithful": self.faithful,
            "passed": self.passed,
        }


def brauer_image(n: int, r: int, s: int):
    gens = [action_operator(D, n) for D in brauer_generators(r, s)]
    return span_closure(gens, with_identity=True, size=n ** (r + s))


def brauer_commutant(n: int, r: int, s: int):
    gens = [action_operator(D, n) for D in brauer_generators(r, s)]
    return commutant(gens, size=n ** (r + s))


def double_centralizer_check(n: int, r: int, s: int) -> CentralizerReport:
    """Dimensions of both images and both commutants on ``E^{r,s}``.

    Equality is only claimed for ``n >= r + s``; outside that range the numbers
    are still computed and reported.
    """
    if n < r + s:
        warnings.warn(f"n={n} < r+s={r + s}: double centralizer equalities are not asserted", stacklevel=2)
    size = n ** (r + s)
    gl = mixed_generator_matrices(n, r, s)
    d1 = brauer_image(n, r, s).dim
    d2 = brauer_commutant(n, r, s).dim
    d3 = commutant(gl, size=size).dim
    d4 = span_closure(gl, with_identity=True, size=size).dim
    return CentralizerReport(n, r, s, d1, d2, d3, d4)
