"""Independent reference computations used by the test suite.

These avoid the package's own enumeration paths on purpose: brute-force
boxes, closed-form products and direct index bookkeeping.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import comb, prod


def weights_by_box(n: int, r: int, s: int) -> set[tuple[int, ...]]:
    """Λ(n;r,s) from the defining sums over the box [-s, r]^n."""
    out = set()
    for w in product(range(-s, r + 1), repeat=n):
        pos = sum(x for x in w if x > 0)
        neg = -sum(x for x in w if x < 0)
        if any(pos == r - t and neg == s - t for t in range(min(r, s) + 1)):
            out.add(w)
    return out


def partitions(d: int, n: int, cap: int | None = None) -> list[tuple[int, ...]]:
    """Partitions of d into at most n parts, padded to length n."""
    cap = d if cap is None else cap
    if n == 0:
        return [()] if d == 0 else []
    out = []
    for first in range(min(d, cap), -1, -1):
        for rest in partitions(d - first, n - 1, first):
            out.append((first,) + rest)
    return out


def weyl_product(lam) -> int:
    """Weyl dimension formula for GL_n."""
    n = len(lam)
    num = prod(Fraction(lam[i] - lam[j] + j - i, j - i) for i in range(n) for j in range(i + 1, n))
    assert num.denominator == 1
    return int(num)


def schur_dim(n: int, d: int) -> int:
    return comb(n * n + d - 1, d)


def n2_rational_dim(r: int, s: int) -> int:
    """dim S(2;r,s) = dim S(2, r+s) = C(r+s+3, 3)."""
    return comb(r + s + 3, 3)


def rational_dim_by_weyl(n: int, r: int, s: int) -> int:
    """Sum of squared Weyl dimensions over Λ⁺(n;r,s), enumerated from the box."""
    total = 0
    for w in weights_by_box(n, r, s):
        if all(a >= b for a, b in zip(w, w[1:])):
            total += weyl_product(w) ** 2
    return total


def mixed_basis(n: int, r: int, s: int):
    return list(product(range(1, n + 1), repeat=r + s))


def dense_rank(rows) -> int:
    """Textbook Gaussian elimination over Fractions on dense lists."""
    m = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][c] != 0:
                f = m[i][c] / m[rank][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def dense_mul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]
