"""Check the generators-and-relations presentations on concrete matrices.

Relations are evaluated as exact matrix identities on ``E^{⊗d}`` (ordinary
case) or on mixed tensor space ``E^{r,s}`` (rational case, where the Cartan
generators are the natural ``H_i`` whose eigenvalues lie in ``[-s, r]``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Sequence

from .exactlin import ExactMatrix
from .schur import build_rational_envelope, hyper_generators, rational_weyl_data

RELATION_IDS = ("a", "b", "c", "d", "e", "f", "g")


@dataclass
class RelationReport:
    relation: str
    witnesses: list[tuple[tuple, bool]] = field(default_factory=list)

    @property
    def all_hold(self) -> bool:
        return all(ok for _, ok in self.witnesses)

    def failing(self) -> list[tuple]:
        return [idx for idx, ok in self.witnesses if not ok]

    def record(self, index: tuple, matrix: ExactMatrix) -> None:
        self.witnesses.append((index, matrix.is_zero()))


@dataclass
class PresentationReport:
    n: int
    r: int
    s: int
    relations: dict[str, RelationReport]

    @property
    def all_hold(self) -> bool:
        return all(rep.all_hold for rep in self.relations.values())

    def to_json(self) -> dict:
        out = {}
        for rid, rep in self.relations.items():
            out[rid] = rep.all_hold
            if not rep.all_hold:
                out[f"{rid}_failing"] = [list(idx) for idx in rep.failing()]
        return out


def _pairing(i: int, j: int) -> int:
    # (eps_i, alpha_j) with alpha_j = eps_j - eps_{j+1}
    return (i == j) - (i == j + 1)


def falling_product(H: ExactMatrix, roots: Sequence[int]) -> ExactMatrix:
    """``prod_k (H - k)`` over the given roots."""
    one = ExactMatrix.identity(H.nrows)
    out = one
    for k in roots:
        out = out @ (H - one * k)
    return out


def _check_serre_and_cartan(n: int, e, f, H, top: int, bottom: int, total: int, pr: PresentationReport, g_id: str):
    one = ExactMatrix.identity(H[0].nrows)
    rel = pr.relations
    for i in range(n):
        for j in range(n):
            rel["a"].record((i + 1, j + 1), H[i] @ H[j] - H[j] @ H[i])
    for i in range(n - 1):
        for j in range(n - 1):
            rhs = H[j] - H[j + 1] if i == j else ExactMatrix.zeros(one.nrows)
            rel["b"].record((i + 1, j + 1), e[i] @ f[j] - f[j] @ e[i] - rhs)
    for i in range(n):
        for j in range(n - 1):
            c = _pairing(i + 1, j + 1)
            rel["c"].record((i + 1, j + 1, "e"), H[i] @ e[j] - e[j] @ H[i] - e[j] * c)
            rel["c"].record((i + 1, j + 1, "f"), H[i] @ f[j] - f[j] @ H[i] + f[j] * c)
    for i in range(n - 1):
        for j in range(n - 1):
            if abs(i - j) == 1:
                for name, x in (("e", e), ("f", f)):
                    serre = x[i] @ x[i] @ x[j] - (x[i] @ x[j] @ x[i]) * 2 + x[j] @ x[i] @ x[i]
                    rel["d"].record((i + 1, j + 1, name), serre)
            elif i != j:
                rel["e"].record((i + 1, j + 1, "e"), e[i] @ e[j] - e[j] @ e[i])
                rel["e"].record((i + 1, j + 1, "f"), f[i] @ f[j] - f[j] @ f[i])
    acc = ExactMatrix.zeros(one.nrows)
    for h in H:
        acc = acc + h
    rel["f"].record((), acc - one * total)
    for i in range(n):
        rel[g_id].record((i + 1,), falling_product(H[i], range(bottom, top + 1)))


def check_ordinary_relations(n: int, d: int) -> PresentationReport:
    """Relations (a)-(g) for ``S(n, d)`` on ``E^{⊗d}``."""
    g = hyper_generators(n, d, 0)
    pr = PresentationReport(n, d, 0, {rid: RelationReport(rid) for rid in RELATION_IDS})
    _check_serre_and_cartan(n, g.e, g.f, g.H, top=d, bottom=0, total=d, pr=pr, g_id="g")
    return pr


def check_rational_relations(n: int, r: int, s: int) -> PresentationReport:
    """Relations (a)-(f) and (g') for ``S(n;r,s)`` on ``E^{r,s}``.

    (g') is ``(H'+s)(H'+s-1)...(H'-r) = 0``; its roots run over ``-s..r``.
    """
    g = hyper_generators(n, r, s)
    ids = RELATION_IDS[:-1] + ("g'",)
    pr = PresentationReport(n, r, s, {rid: RelationReport(rid) for rid in ids})
    _check_serre_and_cartan(n, g.e, g.f, g.H, top=r, bottom=-s, total=r - s, pr=pr, g_id="g'")
    return pr


def annihilator_is_minimal(n: int, r: int, s: int) -> bool:
    """Dropping any single root from (g') leaves a nonzero matrix for some ``H'_i``."""
    H = hyper_generators(n, r, s).H
    roots = list(range(-s, r + 1))
    for k in roots:
        rest = [x for x in roots if x != k]
        if all(falling_product(h, rest).is_zero() for h in H):
            return False
    return True


def binomial_matrix(H: ExactMatrix, k: int) -> ExactMatrix:
    """``binom(H, k) = H(H-1)...(H-k+1) / k!``."""
    return falling_product(H, range(k)) * Fraction(1, factorial(k))


def weight_idempotent_from_cartan(mu: Sequence[int], H: Sequence[ExactMatrix]) -> ExactMatrix:
    """``1_mu = prod_i binom(H_i, mu_i)``."""
    out = ExactMatrix.identity(H[0].nrows)
    for h, m in zip(H, mu):
        out = out @ binomial_matrix(h, m)
    return out


def semisimple_dimension_audit(n: int, r: int, s: int) -> bool:
    """The envelope dimension equals the sum of squared Weyl dimensions over Λ⁺(n;r,s)."""
    expected = sum(k * k for _, k in rational_weyl_data(n, r, s))
    return build_rational_envelope(n, r, s).dim == expected
