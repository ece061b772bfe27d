"""Arcs on N_K = (x1 - xk^k : 2 <= k <= K): the x1-order should be lcm(2..K).

    python scripts/root_tower_scaling.py --k-max 5
"""
import argparse
import json
import math
import time
from dataclasses import dataclass

from formalarcs.cli import run_script
from formalarcs.corpus import root_tower_script


@dataclass
class Config:
    k_max: int = 5
    trunc: int = 12


def run(cfg: Config):
    rows = []
    for K in range(2, cfg.k_max + 1):
        want = math.lcm(*range(2, K + 1))
        start = time.perf_counter()
        out = run_script(root_tower_script(K, order=want, trunc=cfg.trunc))
        secs = time.perf_counter() - start
        if out.status:
            rows.append((K, want, None, None, secs, out.error))
            continue
        doc = json.loads(out.output)
        got = min(e for e, _, _ in doc["arc"][0])
        rows.append((K, want, got, doc["ramification_index"], secs, ""))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k-max", type=int, default=Config.k_max)
    ap.add_argument("--trunc", type=int, default=Config.trunc)
    cfg = Config(**{k.replace("-", "_"): v for k, v in vars(ap.parse_args()).items()})
    print(f"{'K':>2} {'lcm':>4} {'x1 order':>8} {'e':>3} {'seconds':>8}")
    for K, want, got, e, secs, err in run(cfg):
        print(f"{K:>2} {want:>4} {str(got):>8} {str(e):>3} {secs:>8.2f} {err}")


if __name__ == "__main__":
    main()
