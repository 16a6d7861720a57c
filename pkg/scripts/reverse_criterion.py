"""Random instances of the reverse height criterion for A·K with K a Koszul matrix.

    python3 scripts/reverse_criterion.py --seeds 20
"""

import argparse
from dataclasses import dataclass

from detkit.homology import reverse_criterion_instance


@dataclass
class ReverseConfig:
    seeds: int = 20
    first_seed: int = 0


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--seeds", type=int, default=20)
    ap.add_argument("--first-seed", type=int, default=0)
    a = ap.parse_args()
    cfg = ReverseConfig(a.seeds, a.first_seed)
    applicable = good = 0
    for s in range(cfg.first_seed, cfg.first_seed + cfg.seeds):
        inst = reverse_criterion_instance(s)
        applicable += inst.applicable
        good += inst.applicable and inst.ok
        print(f"seed {s:4d}  height(B) {inst.height_B}  height(AK) {inst.height_AK}  "
              f"{'ok' if inst.ok else 'VIOLATION'}")
    print(f"{good}/{applicable} applicable instances satisfy the criterion")


if __name__ == "__main__":
    main()
