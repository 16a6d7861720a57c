"""Sylvester forms of random height-two ideals with 3×2 quadratic syzygies.

Emits data only: bidegrees, Rees-kernel membership of the Sylvester form,
and whether it already lies in the ideal of the symmetric presentation.

    python3 scripts/sylvester_data.py --count 20 --seed 0
"""

import argparse
import json
import random
from dataclasses import asdict, dataclass

from detkit.groebner import Ideal, buchberger, ideal_height, normal_form
from detkit.matrix import PolyMatrix, signed_maximal_minors
from detkit.poly import Ring
from detkit.rees import TVARS, LiftError, rees_member, sym_presentation, sylvester_form

QUADS = ("x^2", "x*y", "x*z", "y^2", "y*z")


@dataclass
class SylvesterConfig:
    count: int = 20
    seed: int = 0
    coeff_bound: int = 3


@dataclass
class Record:
    seed: int
    height: float
    det_bidegree: tuple | None
    in_rees_kernel: bool | None
    in_symmetric_ideal: bool | None
    note: str = ""


def instance(seed: int, bound: int, R: Ring) -> PolyMatrix:
    rng = random.Random(seed)

    def entry():
        return sum((R(m).scale(rng.randint(-bound, bound)) for m in QUADS), R.zero())
    return PolyMatrix(R, [[entry() for _ in range(2)] for _ in range(3)])


def collect(cfg: SylvesterConfig) -> list[Record]:
    R = Ring(["x", "y", "z"])
    out = []
    for k in range(cfg.count):
        s = cfg.seed + k
        phi = instance(s, cfg.coeff_bound, R)
        gens = signed_maximal_minors(phi)
        h = ideal_height(gens) if any(gens) else 0
        if h != 2:
            out.append(Record(s, h, None, None, None, "ideal height is not 2"))
            continue
        f, g = sym_presentation(phi, gens, TVARS)
        try:
            dat = sylvester_form(f, g, R("x"), R("y"))
        except LiftError as exc:
            out.append(Record(s, h, None, None, None, str(exc)))
            continue
        G = buchberger(Ideal.of([f.poly, g.poly]))
        in_sym = not normal_form(dat.det.poly, G)
        out.append(Record(s, h, dat.det.bidegree, rees_member(dat.det, gens), in_sym))
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--count", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--coeff-bound", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    a = ap.parse_args()
    recs = collect(SylvesterConfig(a.count, a.seed, a.coeff_bound))
    if a.json:
        print(json.dumps([asdict(r) for r in recs], indent=2, default=str))
        return
    for r in recs:
        print(f"seed {r.seed:4d}  height {r.height}  det bidegree {r.det_bidegree}  "
              f"rees {r.in_rees_kernel}  symmetric {r.in_symmetric_ideal}  {r.note}")


if __name__ == "__main__":
    main()
