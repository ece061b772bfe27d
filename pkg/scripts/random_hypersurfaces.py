"""Curve selection on random hypersurfaces through the origin, avoiding the origin.

Reports how often a certificate is found and how the failures split, and
re-verifies every certificate with the independent checker.
"""
import argparse
import collections
import random
import time
from dataclasses import dataclass

from formalarcs.curvesel import curve_select, verify_certificate
from formalarcs.elimination import IdealPresentation
from formalarcs.errors import MathematicalFailure
from formalarcs.field import Field
from formalarcs.series import Ring, random_series


@dataclass
class Config:
    instances: int = 200
    seed: int = 0
    max_vars: int = 3
    trunc: int = 6
    order: int = 10
    prime: int = 0  # 0 means Q


def run(cfg: Config):
    rng = random.Random(cfg.seed)
    fld = Field(cfg.prime)
    tally = collections.Counter()
    for _ in range(cfg.instances):
        n = rng.randint(2, cfg.max_vars)
        R = Ring(fld, n, cfg.trunc)
        f = random_series(R, rng, rng.randint(2, 4), max_coeff=4, min_degree=1, max_degree=4)
        if f.is_zero():
            continue
        N = IdealPresentation(R, [f])
        Z = IdealPresentation(R, [R.var(i) for i in range(n)])
        try:
            arc, cert = curve_select(N, Z, [0] * n, cfg.order)
        except MathematicalFailure as exc:
            tally[type(exc).__name__] += 1
            continue
        tally["verified" if verify_certificate(N, Z, [0] * n, arc, cert).ok else "REJECTED"] += 1
    return tally


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in vars(Config()).items():
        ap.add_argument(f"--{name.replace('_', '-')}", type=int, default=default)
    cfg = Config(**vars(ap.parse_args()))
    start = time.perf_counter()
    tally = run(cfg)
    print(f"{cfg}\n{dict(sorted(tally.items()))}\n{time.perf_counter() - start:.1f} s")


if __name__ == "__main__":
    main()
