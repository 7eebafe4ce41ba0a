"""ad-nil indices of the pivots on R and a wreath-product Jordan probe.

Indices are only reported where the vanishing power stays inside the degree
window; everything else is printed as inconclusive.
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass

from jordouble.catalog import build, pivot_v
from jordouble.doubles import KantorDouble, WreathProduct, hamiltonian
from jordouble.identities import Sampled, check_jordan_super
from jordouble.operators import ad_nil_index


@dataclass
class ProbeConfig:
    N: int = 24
    D: int = 20
    max_power: int = 16
    wreath_n: int = 1
    samples: int = 1000
    seed: int = 0


def main(cfg: ProbeConfig):
    b = build("R", cfg.N, cfg.D).basis
    E = b.generators[0].parent
    for i in (0, 1):
        r = ad_nil_index(pivot_v(i, cfg.N, algebra=E), b, cfg.max_power)
        print(f"ad v{i}: {r if not hasattr(r, 'reason') else 'inconclusive: ' + r.reason}")
    W = WreathProduct(hamiltonian(cfg.wreath_n), KantorDouble(hamiltonian(1)))
    rep = check_jordan_super(W.mul, W.basis(), Sampled(cfg.samples, cfg.seed), W.label)
    print(f"{W.label}: {rep.tested} quadruples, {rep.verdict}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--N", type=int, default=ProbeConfig.N)
    ap.add_argument("--D", type=int, default=ProbeConfig.D)
    ap.add_argument("--wreath-n", type=int, default=1)
    ap.add_argument("--samples", type=int, default=1000)
    a = ap.parse_args()
    main(ProbeConfig(N=a.N, D=a.D, wreath_n=a.wreath_n, samples=a.samples))
