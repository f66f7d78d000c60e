#!/usr/bin/env python3
"""Survey the double centralizer dimensions d1..d4 on mixed tensor space,
including triples with n < r+s where equality is not claimed.

    python3 scripts/swd_survey.py --max-n 3 --max-degree 3
"""

from __future__ import annotations

import argparse
import json
import time
import warnings
from dataclasses import dataclass

from ratschur.brauer import double_centralizer_check


@dataclass
class SurveyConfig:
    max_n: int = 3
    max_degree: int = 3
    max_tensor_dim: int = 81
    json: bool = False


def survey(cfg: SurveyConfig):
    for n in range(2, cfg.max_n + 1):
        for total in range(1, cfg.max_degree + 1):
            if n**total > cfg.max_tensor_dim:
                continue
            for r in range(total, -1, -1):
                s = total - r
                t = time.perf_counter()
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore")
                    rep = double_centralizer_check(n, r, s)
                row = rep.to_dict()
                row["seconds"] = round(time.perf_counter() - t, 3)
                yield row


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=3)
    ap.add_argument("--max-degree", type=int, default=3)
    ap.add_argument("--max-tensor-dim", type=int, default=81)
    ap.add_argument("--json", action="store_true")
    cfg = SurveyConfig(**{k.replace("-", "_"): v for k, v in vars(ap.parse_args()).items()})
    for row in survey(cfg):
        if cfg.json:
            print(json.dumps(row))
            continue
        tag = "" if row["hypothesis_n_ge_r_plus_s"] else "  (n < r+s)"
        print(
            f"n={row['n']} r={row['r']} s={row['s']}  d1={row['d1_brauer_image']:<4} d2={row['d2_brauer_commutant']:<5}"
            f" d3={row['d3_gl_commutant']:<4} d4={row['d4_envelope']:<5} d2=d4:{row['d2_eq_d4']} d3=d1:{row['d3_eq_d1']}{tag}"
        )


if __name__ == "__main__":
    main()
