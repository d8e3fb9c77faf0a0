"""Relative deviation of colored hinge counts from |E|^3 d_a d_b / n^2.

Sweeps |E| as a power of q and prints the worst deviation and the worst
deviation/bound ratio over random trials.

    python scripts/hinge_deviation.py [--qs 11 13 17 19] [--trials 100]
"""
import argparse
import math

import numpy as np

from ffdist.counting import VertexSet, hinge_estimate
from ffdist.finite_field import FieldCtx
from ffdist.geometry import QuadraticForm
from ffdist.spectral_graphs import build_coloring


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--qs", type=int, nargs="+", default=[11, 13, 17, 19])
    ap.add_argument("--exponents", type=float, nargs="+", default=[1.0, 1.25, 1.5, 1.75, 2.0])
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    print("q,exponent,|E|,worst_dev,worst_dev/bound,fails")
    for q in args.qs:
        F = FieldCtx(q)
        col = build_coloring(F, QuadraticForm.euclidean(F))
        n = q * q
        for e in args.exponents:
            size = min(n, math.ceil(q ** e))
            dev, rel, fails = 0.0, 0.0, 0
            for _ in range(args.trials):
                E = VertexSet.random(n, size, rng)
                a, b = (int(x) for x in rng.integers(1, q, size=2))
                rep = hinge_estimate(col, E, a, b)
                dev = max(dev, float(rep.lhs))
                rel = max(rel, float(rep.lhs) / rep.rhs)
                fails += not rep.passed
            print(f"{q},{e},{size},{dev:.6f},{rel:.6f},{fails}", flush=True)


if __name__ == "__main__":
    main()
