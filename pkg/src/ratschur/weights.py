"""Weights of mixed tensor space: the sets Λ(n;r,s), Λ⁺(n;r,s) and dominance.

A weight is a plain tuple of ``n`` integers.  The ambient ``n`` is always
passed explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, accumulate
from typing import Iterable, Sequence

Weight = tuple[int, ...]


def _check_params(n: int, r: int, s: int) -> None:
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    if r < 0 or s < 0:
        raise ValueError(f"r and s must be nonnegative, got r={r}, s={s}")


def is_dominant(weight: Sequence[int]) -> bool:
    return all(a >= b for a, b in zip(weight, weight[1:]))


def _signed_vectors(n: int, pos: int, neg: int) -> Iterable[Weight]:
    """Vectors whose positive entries sum to ``pos`` and negative entries to ``-neg``."""
    if n == 0:
        if pos == 0 and neg == 0:
            yield ()
        return
    for first in range(-neg, pos + 1):
        rest_pos = pos - max(first, 0)
        rest_neg = neg - max(-first, 0)
        for tail in _signed_vectors(n - 1, rest_pos, rest_neg):
            yield (first,) + tail


def enum_weights(n: int, r: int, s: int) -> set[Weight]:
    """All weights of the mixed tensor space ``E^{⊗r} ⊗ E*^{⊗s}`` for GL_n."""
    _check_params(n, r, s)
    out: set[Weight] = set()
    for t in range(min(r, s) + 1):
        out.update(_signed_vectors(n, r - t, s - t))
    return out


def enum_dominant(n: int, r: int, s: int) -> list[Weight]:
    """Dominant weights in Λ(n;r,s), in decreasing lexicographic order.

    Lexicographic order refines dominance, so a weight always precedes every
    weight it strictly dominates.
    """
    return sorted((w for w in enum_weights(n, r, s) if is_dominant(w)), reverse=True)


def member_by_partial_sums(weight: Sequence[int], n: int, r: int, s: int) -> bool:
    """Test membership in Λ(n;r,s) through the total and all proper partial sums."""
    if len(weight) != n:
        raise ValueError(f"weight {tuple(weight)} does not have length {n}")
    if sum(weight) != r - s:
        return False
    for k in range(1, n):
        for idx in combinations(range(n), k):
            p = sum(weight[i] for i in idx)
            if not -s <= p <= r:
                return False
    return True


def dominance_leq(lam: Sequence[int], mu: Sequence[int]) -> bool:
    """True iff ``mu`` dominates ``lam`` (equal totals, prefix sums of mu at least lam's)."""
    if len(lam) != len(mu):
        raise ValueError(f"length mismatch: {len(lam)} vs {len(mu)}")
    if sum(lam) != sum(mu):
        return False
    return all(a <= b for a, b in zip(accumulate(lam), accumulate(mu)))


def _dominant_below(mu: Weight) -> Iterable[Weight]:
    """Every dominant weight dominated by ``mu``; their entries lie in [mu_n, mu_1]."""
    n = len(mu)
    total = sum(mu)
    lo, hi = mu[-1], mu[0]
    prefix_mu = list(accumulate(mu))

    def rec(prefix: tuple[int, ...], cap: int, acc: int):
        k = len(prefix)
        if k == n:
            if acc == total:
                yield prefix
            return
        remaining = n - k
        for v in range(min(cap, hi), lo - 1, -1):
            a = acc + v
            if a > prefix_mu[k]:
                continue
            # remaining entries are at most v and at least lo
            if a + (remaining - 1) * v < total or a + (remaining - 1) * lo > total:
                continue
            yield from rec(prefix + (v,), v, a)

    yield from rec((), hi, 0)


def is_saturated(pi: Iterable[Sequence[int]], n: int, r: int | None = None, s: int | None = None) -> bool:
    """True iff ``pi`` is closed downward under dominance among dominant weights.

    ``r`` and ``s`` are accepted for symmetry with the other operations; the
    test only depends on ``pi`` itself.
    """
    members = {tuple(w) for w in pi}
    for w in members:
        if len(w) != n:
            raise ValueError(f"weight {w} does not have length {n}")
        if not is_dominant(w):
            raise ValueError(f"weight {w} is not dominant")
    for mu in members:
        for lam in _dominant_below(mu):
            if lam not in members:
                return False
    return True


@dataclass(frozen=True)
class BipartitionPair:
    """A pair of partitions; ``minus`` records negative entries reversed and negated."""

    plus: tuple[int, ...] = ()
    minus: tuple[int, ...] = ()

    def __post_init__(self):
        for part in (self.plus, self.minus):
            if any(p <= 0 for p in part) or not is_dominant(part):
                raise ValueError(f"not a partition with positive parts: {part}")

    @property
    def length(self) -> int:
        return len(self.plus) + len(self.minus)

    def __str__(self) -> str:
        return f"plus={','.join(map(str, self.plus))}|minus={','.join(map(str, self.minus))}"

    @classmethod
    def parse(cls, text: str) -> "BipartitionPair":
        fields = dict(part.split("=", 1) for part in text.strip().split("|"))
        if set(fields) != {"plus", "minus"}:
            raise ValueError(f"malformed bipartition {text!r}")

        def parts(v: str) -> tuple[int, ...]:
            return tuple(int(x) for x in v.split(",") if x.strip())

        return cls(parts(fields["plus"]), parts(fields["minus"]))


def to_bipartition(weight: Sequence[int]) -> BipartitionPair:
    if not is_dominant(weight):
        raise ValueError(f"weight {tuple(weight)} is not dominant")
    plus = tuple(x for x in weight if x > 0)
    minus = tuple(-x for x in reversed(weight) if x < 0)
    return BipartitionPair(plus, minus)


def from_bipartition(pair: BipartitionPair, n: int) -> Weight:
    if pair.length > n:
        raise ValueError(f"pair {pair} has {pair.length} parts, more than n={n}")
    zeros = (0,) * (n - pair.length)
    return pair.plus + zeros + tuple(-x for x in reversed(pair.minus))


def shift(weight: Sequence[int], s: int) -> Weight:
    """Add ``s`` to every entry (tensoring with the s-th power of the determinant)."""
    return tuple(x + s for x in weight)


def format_weight(weight: Sequence[int]) -> str:
    return ",".join(str(x) for x in weight)


def parse_weight(text: str) -> Weight:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ValueError(f"malformed weight {text!r}; expected comma-separated integers") from None
