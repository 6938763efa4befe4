"""Compare the numba and numpy support-counting backends.

Runs the counting kernel and a full Apriori mine on a synthetic survey-style
database under each backend (each in a fresh interpreter, since the backend
is fixed at import time) and prints a side-by-side table.

Usage: python benchmarks/bench_backends.py [--transactions N] [--attributes A]
"""

import argparse
import json
import os
import subprocess
import sys
import time


def synthetic_db(n_transactions, n_attributes, values_per_attr, seed=2022):
    import numpy as np

    from electmine.model import encode_rows

    rng = np.random.default_rng(seed)
    rows = []
    for _ in range(n_transactions):
        row = {}
        for a in range(n_attributes):
            v = min(int(rng.geometric(0.5)) - 1, values_per_attr - 1)
            row[f"q{a}"] = str(v)
        rows.append(row)
    return encode_rows(rows, [f"q{a}" for a in range(n_attributes)])


def run_one(args):
    from electmine import _kernels
    from electmine.apriori import MinerConfig, count_support, mine_apriori

    _, db = synthetic_db(args.transactions, args.attributes, args.values)

    # warm up (JIT compile on the numba path)
    pairs = [(i, j) for i in range(db.n_items) for j in range(i + 1, db.n_items)]
    count_support(pairs[:4], db)

    start = time.perf_counter()
    counts = count_support(pairs, db)
    kernel_s = time.perf_counter() - start

    start = time.perf_counter()
    frequent = mine_apriori(db, MinerConfig(args.min_support))
    mine_s = time.perf_counter() - start

    checksum = sum(counts.values())
    print(json.dumps({
        "backend": _kernels.BACKEND,
        "kernel_s": kernel_s,
        "mine_s": mine_s,
        "pair_candidates": len(pairs),
        "frequent_itemsets": len(frequent),
        "checksum": checksum,
    }))


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--transactions", type=int, default=10_000)
    parser.add_argument("--attributes", type=int, default=10)
    parser.add_argument("--values", type=int, default=5)
    parser.add_argument("--min-support", type=float, default=0.03)
    parser.add_argument("--single", action="store_true", help=argparse.SUPPRESS)
    args = parser.parse_args()

    if args.single:
        run_one(args)
        return

    results = []
    for backend in ("numba", "numpy"):
        env = dict(os.environ, ELECTMINE_BACKEND=backend)
        cmd = [sys.executable, __file__, "--single",
               "--transactions", str(args.transactions),
               "--attributes", str(args.attributes),
               "--values", str(args.values),
               "--min-support", str(args.min_support)]
        out = subprocess.run(cmd, env=env, capture_output=True, text=True, check=True)
        results.append(json.loads(out.stdout.strip().splitlines()[-1]))

    if results[0]["checksum"] != results[1]["checksum"]:
        raise SystemExit("backends disagree on counts!")

    print(f"{args.transactions} transactions x {args.attributes * args.values} items, "
          f"min_support {args.min_support}")
    print(f"{'backend':<8} {'kernel_s':>10} {'mine_s':>10}")
    for r in results:
        print(f"{r['backend']:<8} {r['kernel_s']:>10.4f} {r['mine_s']:>10.4f}")
    speedup = results[1]["mine_s"] / results[0]["mine_s"]
    print(f"full-mine speedup (numba over numpy): {speedup:.2f}x")


if __name__ == "__main__":
    main()
