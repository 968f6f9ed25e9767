"""Timing battery: inertia, bisection and oracle agreement on random matrices."""

import argparse
import random
import time
from dataclasses import dataclass, fields
from fractions import Fraction

from spectra_cert import SymMatrix, inertia
from spectra_cert.oracle import oracle_count_below
from spectra_cert.spectral import bisect_spectrum, eigen_count_below


@dataclass
class BenchConfig:
    sizes: tuple = (2, 4, 6, 8)
    trials: int = 20
    num: int = 20
    den: int = 10
    eps_bits: int = 20
    seed: int = 0
    workers: int = 0


def random_sym(rng, n, num, den):
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = Fraction(rng.randint(-num, num), rng.randint(1, den))
    return SymMatrix(rows)


def run(cfg: BenchConfig):
    rng = random.Random(cfg.seed)
    eps = Fraction(1, 2**cfg.eps_bits)
    print(f"{'n':>3} {'inertia ms':>11} {'bisect ms':>10} {'oracle ok':>10}")
    for n in cfg.sizes:
        mats = [random_sym(rng, n, cfg.num, cfg.den) for _ in range(cfg.trials)]
        t0 = time.perf_counter()
        for A in mats:
            inertia(A)
        t1 = time.perf_counter()
        for A in mats:
            bisect_spectrum(A, eps, workers=cfg.workers or None)
        t2 = time.perf_counter()
        ok = all(
            eigen_count_below(A, t) == oracle_count_below(A, t)
            for A in mats
            for t in (Fraction(rng.randint(-50, 50), rng.randint(1, 7)),)
        )
        print(
            f"{n:>3} {1000 * (t1 - t0) / cfg.trials:>11.2f}"
            f" {1000 * (t2 - t1) / cfg.trials:>10.1f} {str(ok):>10}"
        )


def parse_args() -> BenchConfig:
    ap = argparse.ArgumentParser(description=__doc__)
    default = BenchConfig()
    for f in fields(BenchConfig):
        if f.name == "sizes":
            ap.add_argument("--sizes", type=int, nargs="+", default=list(default.sizes))
        else:
            ap.add_argument(f"--{f.name.replace('_', '-')}", type=int, default=getattr(default, f.name))
    ns = ap.parse_args()
    return BenchConfig(**{**vars(ns), "sizes": tuple(ns.sizes)})


if __name__ == "__main__":
    run(parse_args())
