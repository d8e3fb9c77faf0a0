"""Triangle censuses: T_{a,b,c}(E), realized signatures and T_3(E).

All triangle quantities use the Euclidean norm ``x1^2 + x2^2`` and ordered
triples ``(x, y, z)`` in ``E^3``.  Work is organised per pivot ``x``:
for each x in E the row ``D[x] = (||x - y||)_y`` of the pairwise norm
matrix restricted to E drives every count.

Congruence classes use translations and SO_2 only.  A non-degenerate
ordered triangle is determined up to such a motion by its signature
together with its orientation ``det(y - x, z - x)``; the signature alone
only fixes it up to O_2, so mirror images share a signature but are in
different classes.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from .counting import VertexSet
from .finite_field import FieldCtx
from .geometry import (Point, TriangleSignature, find_rigid_motion, orientation,
                       plane, signature, so2_elements)

DEFAULT_BUDGET = 5 * 10 ** 8
DEFAULT_C = 4.0
DEFAULT_FLOOR = 0.05
SCHEMA = 1


def norm_matrix(field: FieldCtx, idx: np.ndarray) -> np.ndarray:
    """D[i, j] = ||p_i - p_j|| for the vertex indices ``idx``."""
    pl = plane(field)
    return pl.euclidean.values[pl.sub_idx(idx[:, None], idx[None, :])]


def t_abc(field: FieldCtx, E: VertexSet, a: int, b: int, c: int) -> int:
    """|{(x, y, z) in E^3 : ||x-y|| = a, ||x-z|| = b, ||y-z|| = c}|."""
    idx = E.indices()
    if len(idx) == 0:
        return 0
    D = norm_matrix(field, idx)
    total = 0
    for row in D:
        ys, zs = row == a, row == b
        if ys.any() and zs.any():
            total += int(np.count_nonzero(D[np.ix_(ys, zs)] == c))
    return total


@dataclass
class SignatureCensus:
    q: int
    counts: np.ndarray          # shape (q, q, q); counts[a, b, c] = |T_{a,b,c}(E)|

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    @property
    def realized(self) -> int:
        """Signatures (a, b, c) in F_q^3 with T_{a,b,c}(E) nonempty."""
        return int(np.count_nonzero(self.counts))

    @property
    def realized_nonzero(self) -> int:
        """Realized signatures with a, b, c all nonzero."""
        return int(np.count_nonzero(self.counts[1:, 1:, 1:]))

    def count(self, a: int, b: int, c: int) -> int:
        return int(self.counts[a, b, c])

    def as_dict(self) -> dict[TriangleSignature, int]:
        return {TriangleSignature(*map(int, k)): int(self.counts[tuple(k)])
                for k in np.argwhere(self.counts)}

    def write_csv(self, handle) -> None:
        w = csv.writer(handle, lineterminator="\n")
        w.writerow(("a", "b", "c", "count"))
        for k in np.argwhere(self.counts):
            w.writerow((*map(int, k), int(self.counts[tuple(k)])))


def signature_census(field: FieldCtx, E: VertexSet) -> SignatureCensus:
    q = field.q
    flat = np.zeros(q ** 3, dtype=np.int64)
    idx = E.indices()
    if len(idx):
        D = norm_matrix(field, idx)
        for row in D:
            codes = (row[:, None] * q + row[None, :]) * q + D
            flat += np.bincount(codes.ravel(), minlength=q ** 3)
    return SignatureCensus(q, flat.reshape(q, q, q))


# -- congruence classes ---------------------------------------------------

@dataclass
class CongruenceCensus:
    nondegenerate: int
    degenerate: int | None      # None when the orbit budget was exceeded
    nondegenerate_signatures: int
    method: str
    partial: bool = False

    @property
    def total(self) -> int | None:
        return None if self.degenerate is None else self.nondegenerate + self.degenerate


def _rotation_perms(field: FieldCtx) -> np.ndarray:
    pl = plane(field)
    v = np.arange(pl.n)
    return np.stack([pl.rotate_idx(r, v) for r in so2_elements(field)])


def _pivot_frames(field: FieldCtx, idx: np.ndarray):
    """Per pivot x: (u, det) with u[j] = p_j - x, det[j, k] = det(u_j, u_k)."""
    pl = plane(field)
    for x in idx:
        u = pl.sub_idx(idx, np.full_like(idx, x))
        yield u, pl.det_idx(u[:, None], u[None, :])


def _orbit_keys(perms: np.ndarray, n: int, u: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Canonical key of the orbit of (0, u, w): min over rotations of (O u, O w)."""
    return (perms[:, u] * n + perms[:, w]).min(axis=0)


def t3_classes(field: FieldCtx, E: VertexSet, budget: int = DEFAULT_BUDGET,
               method: str = "shortcut") -> CongruenceCensus:
    """Number of classes of E^3 under x -> O(x) + tau, O in SO_2.

    ``shortcut`` counts non-degenerate classes as distinct (signature,
    orientation) pairs and enumerates orbits only for the degenerate
    triples.  ``orbit`` canonicalises every triple; use it to cross-check.
    Orbit work is |SO_2| per canonicalised triple; if it would exceed
    ``budget`` the degenerate count is omitted and the result is partial.
    """
    if method not in ("shortcut", "orbit"):
        raise ValueError(f"unknown method {method!r}")
    q, pl = field.q, plane(field)
    idx = E.indices()
    if len(idx) == 0:
        return CongruenceCensus(0, 0, 0, method)

    n_rot = len(so2_elements(field))
    euc = pl.euclidean.values
    nondeg_keys, sig_keys, orbit_nd, orbit_deg = set(), set(), set(), set()
    frames = list(_pivot_frames(field, idx))

    n_deg = sum(int(np.count_nonzero(det == 0)) for _, det in frames)
    work = n_rot * (len(idx) ** 3 if method == "orbit" else n_deg)
    do_orbits = work <= budget
    perms = _rotation_perms(field) if do_orbits else None

    for u, det in frames:
        nu = euc[u]
        duw = euc[pl.sub_idx(u[:, None], u[None, :])]
        sig = (nu[:, None] * q + nu[None, :]) * q + duw
        nd = det != 0
        sig_keys.update(np.unique(sig[nd]).tolist())
        nondeg_keys.update(np.unique(sig[nd] * q + det[nd]).tolist())
        if not do_orbits:
            continue
        U = np.broadcast_to(u[:, None], det.shape)
        W = np.broadcast_to(u[None, :], det.shape)
        dg = ~nd
        orbit_deg.update(np.unique(_orbit_keys(perms, pl.n, U[dg], W[dg])).tolist())
        if method == "orbit":
            orbit_nd.update(np.unique(_orbit_keys(perms, pl.n, U[nd], W[nd])).tolist())

    nondeg = len(orbit_nd) if method == "orbit" else len(nondeg_keys)
    if not do_orbits:
        return CongruenceCensus(len(nondeg_keys), None, len(sig_keys), method, partial=True)
    return CongruenceCensus(nondeg, len(orbit_deg), len(sig_keys), method)


def rigidity_failures(field: FieldCtx, E: VertexSet | None = None, rotations=None):
    """Non-degenerate ordered triples not congruent to their signature's representative.

    Congruence is an equivalence relation, so "every pair with equal
    signatures is congruent" holds iff this list is empty.  Returns
    ``(checked, failures)`` with failures as (representative, triple) pairs.
    """
    pl = plane(field)
    pts = pl.points() if E is None else E.points(field)
    reps: dict[TriangleSignature, tuple] = {}
    failures, checked = [], 0
    for x in pts:
        for y in pts:
            for z in pts:
                if orientation(field, x, y, z) == 0:
                    continue
                checked += 1
                t = (x, y, z)
                s = signature(field, x, y, z)
                rep = reps.setdefault(s, t)
                if rep is not t and find_rigid_motion(field, rep, t, rotations) is None:
                    failures.append((rep, t))
    return checked, failures


# -- lower-bound harness ---------------------------------------------------

@dataclass
class T3Report:
    q: int
    rho: float
    seed: int
    trials: int
    size: int
    ratios: list[float]
    class_counts: list[int]
    in_hypothesis: bool
    floor: float
    C: float
    partial: bool = False
    notes: list[str] = dc_field(default_factory=list)

    @property
    def min_ratio(self) -> float:
        return min(self.ratios) if self.ratios else math.nan

    @property
    def median_ratio(self) -> float:
        return float(np.median(self.ratios)) if self.ratios else math.nan

    @property
    def passed(self) -> bool | None:
        """None outside the hypothesis rho >= C / sqrt(q): nothing is asserted."""
        if not self.in_hypothesis or self.partial:
            return None
        return self.min_ratio > self.floor

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "q": self.q,
            "rho": self.rho,
            "seed": self.seed,
            "trials": self.trials,
            "size": self.size,
            "min_ratio": round(self.min_ratio, 12),
            "median_ratio": round(self.median_ratio, 12),
            "in_hypothesis": self.in_hypothesis,
            "floor": self.floor,
            "C": self.C,
            "passed": self.passed,
            "partial": self.partial,
            "class_counts": self.class_counts,
            "notes": self.notes,
        }


def subset_size(q: int, rho: float) -> int:
    return min(q * q, math.ceil(rho * q * q - 1e-9))


def trial_rngs(seed: int, trials: int) -> list[np.random.Generator]:
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(trials)]


def verify_t3_lower_bound(field: FieldCtx, rho: float, trials: int, seed: int,
                          C: float = DEFAULT_C, floor: float = DEFAULT_FLOOR,
                          budget: int = DEFAULT_BUDGET) -> T3Report:
    """Sample E with |E| = ceil(rho q^2) and report |T_3(E)| / (rho q^3).

    ``floor`` is a harness threshold; it is only checked when
    C / sqrt(q) <= rho.  If the orbit budget is exceeded the
    non-degenerate class count (a lower bound for |T_3(E)|) is used and the
    report is marked partial.
    """
    if not 0 < rho <= 1:
        raise ValueError("rho must lie in (0, 1]")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    q, n = field.q, field.q ** 2
    size = subset_size(q, rho)
    report = T3Report(q, rho, seed, trials, size, [], [],
                      in_hypothesis=C / math.sqrt(q) <= rho, floor=floor, C=C)
    if not report.in_hypothesis:
        report.notes.append(f"rho < C/sqrt(q) = {C / math.sqrt(q):.4g}: report only")
    for rng in trial_rngs(seed, trials):
        E = VertexSet.full(n) if size == n else VertexSet.random(n, size, rng)
        cc = t3_classes(field, E, budget)
        count = cc.nondegenerate if cc.partial else cc.total
        report.partial |= cc.partial
        report.class_counts.append(count)
        report.ratios.append(count / (rho * q ** 3))
    return report


# -- concentric circles ----------------------------------------------------

def circle_distance_set(field: FieldCtx, x: Point, E: VertexSet, a: int, b: int) -> frozenset[int]:
    """{||y - z|| : y, z in E, ||x - y|| = a, ||x - z|| = b}."""
    pl = plane(field)
    idx = E.indices()
    if len(idx) == 0:
        return frozenset()
    v = pl.index(x)
    r = pl.euclidean.values[pl.sub_idx(idx, np.full_like(idx, v))]
    ys, zs = idx[r == a], idx[r == b]
    if len(ys) == 0 or len(zs) == 0:
        return frozenset()
    return frozenset(np.unique(pl.euclidean.values[pl.sub_idx(ys[:, None], zs[None, :])]).tolist())


def circle_distance_floor(field: FieldCtx) -> int:
    """ceil((q - chi(-1)) / 4): the observational threshold for full circles."""
    q = field.q
    return math.ceil((q - field.quadratic_character(field.neg(1))) / 4)
