"""Raise the requested order on the cusp and check each arc extends the previous one."""
import argparse
from dataclasses import dataclass, field

from formalarcs.cli import run_script
from formalarcs.corpus import cusp_script
from formalarcs.document import parse_document


@dataclass
class Config:
    orders: list = field(default_factory=lambda: [4, 8, 12, 24, 48])
    trunc: int = 8


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--orders", type=int, nargs="+", default=Config().orders)
    cfg = Config(orders=ap.parse_args().orders)
    previous = None
    for order in cfg.orders:
        doc = parse_document(run_script(cusp_script(order, cfg.trunc)).output)
        extends = previous is None or all(
            [t for t in new if t[0] <= previous[0]] == old
            for old, new in zip(previous[1], doc.arc))
        print(f"order {order:>3}: arc {doc.arc}  e={doc.ramification_index}  "
              f"extends previous: {extends}")
        previous = (order, doc.arc)


if __name__ == "__main__":
    main()
