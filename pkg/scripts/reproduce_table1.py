"""Argmax probabilities P(X_m = M) next to their asymptotic and comparison integral.

    python3 scripts/reproduce_table1.py --rows 1,2,3,4,5,10,50,100
"""

import argparse
import time
from dataclasses import dataclass

from couponmax.maxprob import table1


@dataclass(frozen=True)
class Table1Config:
    rows: tuple[int, ...] = (1, 2, 3, 4, 5, 10, 50, 100)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rows", default=",".join(map(str, Table1Config.rows)))
    cfg = Table1Config(tuple(int(v) for v in ap.parse_args().rows.split(",")))

    t0 = time.perf_counter()
    rows = table1(cfg.rows)
    print(f"{'m':>5} {'exact':>12} {'asymptotic':>12} {'hr':>12} {'exact/asym':>11}")
    for r in rows:
        print(f"{r.m:>5} {r.exact:12.4e} {r.asymptotic:12.4e} {r.hr_integral:12.4e} "
              f"{r.exact / r.asymptotic:11.5f}")
    print(f"# {time.perf_counter() - t0:.2f}s")


if __name__ == "__main__":
    main()
