"""How the reliable window of R grows with the truncation N.

For each N the flagged-reliable components are compared with a large reference
model; a flagged component that disagrees would be a soundness bug.
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass

from jordouble.catalog import build


@dataclass
class SweepConfig:
    Ns: tuple = (6, 8, 10, 12, 14)
    D: int = 24
    reference_N: int = 30


def main(cfg: SweepConfig):
    ref = build("R", cfg.reference_N, cfg.D).basis
    print(f"reference N={cfg.reference_N} reliable through {ref.reliable_through()}")
    for N in cfg.Ns:
        b = build("R", N, cfg.D).basis
        wrong = [m for m, ok in b.reliable.items()
                 if ok and len(b.components[m]) != len(ref.components.get(m, []))]
        first_bad = next((n for n in range(1, cfg.D + 1)
                          if b.total_dims()[n] != ref.total_dims()[n]), None)
        print(f"N={N:3d} flagged reliable through {b.reliable_through():3d}; "
              f"first actual deviation at {first_bad}; unsound flags {len(wrong)}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--D", type=int, default=SweepConfig.D)
    ap.add_argument("--N", type=int, nargs="*", default=list(SweepConfig.Ns))
    a = ap.parse_args()
    main(SweepConfig(Ns=tuple(a.N), D=a.D))
