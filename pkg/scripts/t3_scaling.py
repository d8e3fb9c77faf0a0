"""|T_3(E)| / (rho q^3) for random subsets against the full-plane baseline.

    python scripts/t3_scaling.py [--qs 3 5 7] [--rhos 0.25 0.5 0.75 1] [--trials 30]
"""
import argparse
import json

from ffdist.counting import VertexSet
from ffdist.finite_field import FieldCtx
from ffdist.triangles import t3_classes, verify_t3_lower_bound


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--qs", type=int, nargs="+", default=[3, 5, 7])
    ap.add_argument("--rhos", type=float, nargs="+", default=[0.25, 0.5, 0.75, 1.0])
    ap.add_argument("--trials", type=int, default=30)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rows = []
    for q in args.qs:
        F = FieldCtx(q)
        base = t3_classes(F, VertexSet.full(q * q))
        base_ratio = base.total / q ** 3
        for rho in args.rhos:
            rep = verify_t3_lower_bound(F, rho, 1 if rho == 1 else args.trials, args.seed)
            rows.append({"q": q, "rho": rho, "size": rep.size, "baseline": round(base_ratio, 6),
                         "min": round(rep.min_ratio, 6), "median": round(rep.median_ratio, 6),
                         "median/baseline": round(rep.median_ratio / base_ratio, 4),
                         "classes_full": base.total,
                         "max_classes": max(rep.class_counts), "partial": rep.partial})
            print(json.dumps(rows[-1]), flush=True)


if __name__ == "__main__":
    main()
