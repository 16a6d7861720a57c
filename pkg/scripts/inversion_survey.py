"""How often random 4×3 linear matrices meet the inversion-factor preconditions.

    python3 scripts/inversion_survey.py --seeds 20 [--prime 32003]
"""

import argparse
import time
from dataclasses import dataclass

from detkit.groebner import ideal_height
from detkit.homology import be_acyclicity, is_complex
from detkit.maps import GenericityError, inversion_factors, random_linear_matrix
from detkit.suites import inversion_complex


@dataclass
class InversionConfig:
    seeds: int = 20
    first_seed: int = 0
    bound: int = 50
    prime: int | None = None


def run(cfg: InversionConfig):
    for seed in range(cfg.first_seed, cfg.first_seed + cfg.seeds):
        t0 = time.perf_counter()
        L = random_linear_matrix(4, 3, 3, seed, bound=cfg.bound, p=cfg.prime)
        try:
            data = inversion_factors(L)
        except GenericityError as exc:
            yield seed, "precondition", str(exc), time.perf_counter() - t0
            continue
        C = inversion_complex(data)
        h = ideal_height(data.factors, p=cfg.prime)
        good = is_complex(C) and be_acyclicity(C, seed=seed).ok and h == 2
        yield seed, "pass" if good else "fail", f"height(D) = {h}; {C}", time.perf_counter() - t0


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--seeds", type=int, default=20)
    ap.add_argument("--first-seed", type=int, default=0)
    ap.add_argument("--bound", type=int, default=50)
    ap.add_argument("--prime", type=int)
    a = ap.parse_args()
    counts: dict = {}
    for seed, status, note, sec in run(InversionConfig(a.seeds, a.first_seed, a.bound, a.prime)):
        counts[status] = counts.get(status, 0) + 1
        print(f"seed {seed:4d} {status:12s} {sec:6.2f}s  {note}")
    print(counts)


if __name__ == "__main__":
    main()
