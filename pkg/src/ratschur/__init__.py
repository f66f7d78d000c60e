"""Exact constructions of rational Schur algebras S(n;r,s).

Three routes are provided: a cellular quotient of an ordinary Schur algebra,
the envelope of gl_n acting on mixed tensor space, and the commutant of the
walled Brauer algebra.  All arithmetic is over the rationals.
"""

from .brauer import WalledDiagram, double_centralizer_check, enum_diagrams
from .exactlin import AlgebraSpan, ExactMatrix, commutant, span_closure
from .schur import (
    build_ordinary_schur,
    build_rational_envelope,
    build_rational_quotient,
    rational_weyl_data,
)
from .tableaux import enum_ssyt, weyl_dim
from .weights import enum_dominant, enum_weights

__all__ = [
    "AlgebraSpan",
    "ExactMatrix",
    "WalledDiagram",
    "build_ordinary_schur",
    "build_rational_envelope",
    "build_rational_quotient",
    "commutant",
    "double_centralizer_check",
    "enum_diagrams",
    "enum_dominant",
    "enum_ssyt",
    "enum_weights",
    "rational_dim",
    "rational_weyl_data",
    "span_closure",
    "weyl_dim",
]

__version__ = "0.1.0"


def rational_dim(n: int, r: int, s: int) -> int:
    """Sum of squared Weyl dimensions over the dominant weights of bidegree (r, s)."""
    return sum(k * k for _, k in rational_weyl_data(n, r, s))
