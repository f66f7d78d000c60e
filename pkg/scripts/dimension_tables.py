#!/usr/bin/env python3
"""Print dimension tables for S(n,d) and S(n;r,s) computed by every available route.

    python3 scripts/dimension_tables.py --n 3 --max-degree 4
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from ratschur import rational_dim
from ratschur.schur import (
    build_ordinary_schur,
    build_rational_envelope,
    build_rational_quotient,
    codeterminant_rank,
    quotient_degree,
    schur_dim_formula,
)
from ratschur.weights import format_weight


@dataclass
class TableConfig:
    n: int = 3
    max_degree: int = 4
    quotient_limit: int = 5  # largest ordinary degree used by the quotient route


def ordinary_rows(cfg: TableConfig):
    for d in range(1, cfg.quotient_limit + 1):
        t = time.perf_counter()
        dim = codeterminant_rank(build_ordinary_schur(cfg.n, d))
        yield d, dim, schur_dim_formula(cfg.n, d), time.perf_counter() - t


def rational_rows(cfg: TableConfig):
    for total in range(1, cfg.max_degree + 1):
        for r in range(total, -1, -1):
            s = total - r
            env = build_rational_envelope(cfg.n, r, s)
            quot = None
            if quotient_degree(cfg.n, r, s) <= cfg.quotient_limit:
                quot = build_rational_quotient(cfg.n, r, s)
            yield r, s, env, quot


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--max-degree", type=int, default=4, help="largest r+s")
    ap.add_argument("--quotient-limit", type=int, default=5)
    cfg = TableConfig(**{k.replace("-", "_"): v for k, v in vars(ap.parse_args()).items()})

    print(f"S({cfg.n},d): codeterminant rank vs binomial")
    for d, dim, binom, secs in ordinary_rows(cfg):
        print(f"  d={d}  rank={dim:<6} binomial={binom:<6} {'ok' if dim == binom else 'MISMATCH'}  {secs:.2f}s")

    print(f"\nS({cfg.n};r,s): envelope, quotient (kernel), sum of Weyl squares")
    for r, s, env, quot in rational_rows(cfg):
        q = f"{quot.dim} (kernel {quot.quotient.kernel_dim})" if quot else "-"
        weyl = ", ".join(f"{format_weight(lam)}:{k}" for lam, k in env.weyl_data)
        print(f"  ({r},{s})  envelope={env.dim:<5} quotient={q:<18} weyl={rational_dim(cfg.n, r, s):<5} [{weyl}]")


if __name__ == "__main__":
    main()
