"""Time the compiled and the pure-Python greedy walkers on the same instances.

    python3 benchmarks/compare_backends.py --n-range 4:8 --k 1 --repeat 3

Prints one CSV row per (instance, backend) with the best of ``--repeat`` runs.
Both walkers must visit the same number of facets; a mismatch aborts.
"""

import argparse
import csv
import sys
import time

from greedyflip.backend import available_backends
from greedyflip.cli import parse_range
from greedyflip.coxeter import build_system, longest_element, multicluster_word
from greedyflip.enumeration import NEGATIVE, POSITIVE
from greedyflip.subword import Instance, negative_greedy, positive_greedy


def walk(module, inst, sign):
    root = negative_greedy(inst) if sign == NEGATIVE else positive_greedy(inst)
    sys_ = inst.system
    walker = module.GreedyWalker(
        root.members, root.roots, sys_.refl_table(), sys_.N, sign == NEGATIVE, inst.inv_rho_inv
    )
    return 1 + walker.run()


def best_time(module, inst, sign, repeat):
    best, count = float("inf"), None
    for _ in range(repeat):
        start = time.perf_counter()
        count = walk(module, inst, sign)
        best = min(best, time.perf_counter() - start)
    return count, best


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--type", default="A")
    p.add_argument("--n-range", default="3:7")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--sign", choices=("+", "-"), default="-")
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args(argv)

    backends = available_backends()
    if "cython" not in backends:
        print("compiled kernels are not built; only the pure-Python walker is available", file=sys.stderr)
    sign = NEGATIVE if args.sign == "-" else POSITIVE
    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(["type", "k", "m", "facets", "backend", "best_s", "us_per_facet", "speedup"])
    for n in parse_range(args.n_range, "--n-range"):
        system = build_system(f"{args.type}{n}")
        inst = Instance(system, multicluster_word(system, tuple(range(n)), args.k), longest_element(system))
        results = {name: best_time(mod, inst, sign, args.repeat) for name, mod in sorted(backends.items())}
        counts = {count for count, _ in results.values()}
        if len(counts) != 1:
            sys.exit(f"backends disagree on {args.type}{n}: {results}")
        base = results["python"][1]
        for name, (count, elapsed) in results.items():
            out.writerow([
                f"{args.type}{n}", args.k, inst.m, count, name, f"{elapsed:.6f}",
                f"{1e6 * elapsed / count:.3f}", f"{base / elapsed:.1f}",
            ])
        sys.stdout.flush()


if __name__ == "__main__":
    main()
