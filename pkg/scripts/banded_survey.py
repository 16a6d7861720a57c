"""Height and multiplicity of submaximal minors across banded sections.

    python3 scripts/banded_survey.py --max-m 4 [--hessian] [--json out.json]
"""

import argparse
import json
import time
from collections.abc import Iterator
from dataclasses import asdict, dataclass

from detkit.catalog import banded_section
from detkit.groebner import Ideal, buchberger, initial_ideal, monomial_height, multiplicity
from detkit.maps import rank_mod_hessian
from detkit.matrix import determinant, minor_ideal_gens
from detkit.poly import DEFAULT_PRIME


@dataclass
class SurveyConfig:
    min_m: int = 3
    max_m: int = 4
    hessian: bool = False
    exact_hessian_up_to: int = 4   # beyond this m the Hessian rank is sampled mod p
    prime: int | None = DEFAULT_PRIME


@dataclass
class Row:
    m: int
    r: int
    s: int
    nvars: int
    height: int
    multiplicity: int
    formula: int
    hessian_rank_mod_f: int | None   # exact for m <= exact_hessian_up_to, else a lower bound
    seconds: float


def survey(cfg: SurveyConfig) -> Iterator[Row]:
    for m in range(cfg.min_m, cfg.max_m + 1):
        for r in range(m - 1):
            for s in range(r, m - 1):
                t0 = time.perf_counter()
                G = banded_section(m, r, s, p=cfg.prime)
                gb = buchberger(Ideal.of(minor_ideal_gens(G, m - 1)), p=cfg.prime)
                hr = None
                if cfg.hessian:
                    f = determinant(banded_section(m, r, s))
                    hr = rank_mod_hessian(f, exact=m <= cfg.exact_hessian_up_to)[0]
                yield Row(m, r, s, G.ring.nvars, monomial_height(initial_ideal(gb)),
                          multiplicity(gb), m * m * (m + 1) * (m - 1) // 12, hr,
                          round(time.perf_counter() - t0, 3))


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--min-m", type=int, default=3)
    ap.add_argument("--max-m", type=int, default=4)
    ap.add_argument("--hessian", action="store_true")
    ap.add_argument("--qq", action="store_true", help="work over the rationals")
    ap.add_argument("--json")
    a = ap.parse_args()
    cfg = SurveyConfig(min_m=a.min_m, max_m=a.max_m, hessian=a.hessian,
                       prime=None if a.qq else DEFAULT_PRIME)
    rows = []
    print(f"{'m':>2} {'r':>2} {'s':>2} {'vars':>4} {'ht':>3} {'e':>5} {'formula':>7} {'hess':>4} {'sec':>7}")
    for x in survey(cfg):
        rows.append(x)
        hess = "-" if x.hessian_rank_mod_f is None else x.hessian_rank_mod_f
        print(f"{x.m:2d} {x.r:2d} {x.s:2d} {x.nvars:4d} {x.height:3d} {x.multiplicity:5d} "
              f"{x.formula:7d} {hess:>4} {x.seconds:7.3f}", flush=True)
    if a.json:
        with open(a.json, "w") as fh:
            json.dump({"config": asdict(cfg), "rows": [asdict(x) for x in rows]}, fh, indent=2)


if __name__ == "__main__":
    main()
