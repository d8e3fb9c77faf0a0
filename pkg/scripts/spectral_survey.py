"""Worst non-principal eigenvalue of every Euclidean distance graph, q <= QMAX.

    python scripts/spectral_survey.py [--qmax 49] [--dense-max 31] [-o survey.csv]
"""
import argparse
import csv
import math
import sys
import time

from ffdist.finite_field import FieldCtx, odd_prime_powers
from ffdist.geometry import QuadraticForm
from ffdist.spectral_graphs import build_distance_graph, spectrum_characters, spectrum_dense


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--qmax", type=int, default=49)
    ap.add_argument("--dense-max", type=int, default=31, help="also run eigh up to this q")
    ap.add_argument("-o", "--output", default=None)
    args = ap.parse_args()

    out = open(args.output, "w", newline="") if args.output else sys.stdout
    w = csv.writer(out, lineterminator="\n")
    w.writerow(("q", "valency", "worst_radius", "lambda", "bound", "ratio", "routes_agree", "seconds"))
    for q in odd_prime_powers(args.qmax):
        t0 = time.perf_counter()
        F = FieldCtx(q)
        Q = QuadraticForm.euclidean(F)
        bound = 2 * math.sqrt(q)
        worst, worst_a, agree, deg = -1.0, None, True, None
        for a in F.nonzero():
            g = build_distance_graph(F, Q, a)
            deg = g.degree
            s = spectrum_characters(g)
            if q <= args.dense_max:
                agree &= spectrum_dense(g).matches(s)
            if s.lam > worst:
                worst, worst_a = s.lam, a
        w.writerow((q, deg, F.format(worst_a), f"{worst:.9f}", f"{bound:.9f}",
                    f"{worst / bound:.6f}", agree if q <= args.dense_max else "",
                    f"{time.perf_counter() - t0:.2f}"))
        out.flush()


if __name__ == "__main__":
    main()
