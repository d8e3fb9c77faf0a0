"""Neighbour variance, edge mixing and hinge counts in (n, d, lambda)-graphs.

Every count is an exact integer computed from adjacency bitsets; each
inequality comes back as a ``BoundReport``.  ``lam`` arguments accept None
(the certified value 2 sqrt q), a number, or ``"measured"`` (the graph's
own second eigenvalue, for tighter reports).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .geometry import Point, plane
from .reports import BoundReport
from .spectral_graphs import DistanceGraph, RegularColoring, spectrum_characters


@dataclass(frozen=True)
class VertexSet:
    """Subset of the q^2 vertices, stored as a Python-int bitset."""

    bits: int
    n: int

    @classmethod
    def from_indices(cls, indices, n: int) -> "VertexSet":
        bits = 0
        for v in indices:
            v = int(v)
            if not 0 <= v < n:
                raise ValueError(f"vertex {v} out of range for n={n}")
            bits |= 1 << v
        return cls(bits, n)

    @classmethod
    def from_points(cls, points, field) -> "VertexSet":
        pl = plane(field)
        return cls.from_indices((pl.index(x) for x in points), pl.n)

    @classmethod
    def full(cls, n: int) -> "VertexSet":
        return cls((1 << n) - 1, n)

    @classmethod
    def empty(cls, n: int) -> "VertexSet":
        return cls(0, n)

    @classmethod
    def random(cls, n: int, size: int, rng: np.random.Generator) -> "VertexSet":
        """Uniform subset of the given size, sampled without replacement."""
        return cls.from_indices(rng.choice(n, size=size, replace=False), n)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, v: int) -> bool:
        return bool(self.bits >> v & 1)

    def __iter__(self):
        b = self.bits
        while b:
            low = b & -b
            yield low.bit_length() - 1
            b ^= low

    def indices(self) -> np.ndarray:
        return np.fromiter(iter(self), dtype=np.int64)

    def mask(self) -> np.ndarray:
        m = np.zeros(self.n, dtype=bool)
        m[self.indices()] = True
        return m

    def issubset(self, other: "VertexSet") -> bool:
        return self.bits & ~other.bits == 0

    def points(self, field) -> list[Point]:
        pl = plane(field)
        return [pl.point(v) for v in self]


def resolve_lambda(g: DistanceGraph, lam=None) -> float:
    if lam is None:
        return 2 * math.sqrt(g.field.q)
    if lam == "measured":
        return spectrum_characters(g).lam
    return float(lam)


def _as_index(g_or_col, x) -> int:
    if isinstance(x, tuple):
        return plane(g_or_col.field).index(x)
    return int(x)


# -- single graph ------------------------------------------------------------

def neighbor_counts(g: DistanceGraph, B: VertexSet) -> list[int]:
    """|N_B(v)| for every vertex v."""
    return [(r & B.bits).bit_count() for r in g.rows]


def neighbor_variance(g: DistanceGraph, B: VertexSet, lam=None) -> BoundReport:
    """sum_v (|N_B(v)| - d|B|/n)^2  <=  (lam^2/n) |B| (n - |B|)."""
    n, d, size = g.n, g.degree, len(B)
    num = sum((n * c - d * size) ** 2 for c in neighbor_counts(g, B))
    lhs = Fraction(num, n * n)
    L = resolve_lambda(g, lam)
    rhs = L * L / n * size * (n - size)
    return BoundReport("neighbor_variance", lhs, rhs, q=g.field.q, a=g.radius, size=size)


def edge_count(g: DistanceGraph, B: VertexSet, C: VertexSet) -> int:
    """Ordered pairs (u, v) in B x C with u ~ v."""
    rows, cb = g.rows, C.bits
    return sum((rows[u] & cb).bit_count() for u in B)


def mixing_edges(g: DistanceGraph, B: VertexSet, C: VertexSet, lam=None) -> BoundReport:
    """|e(B, C) - d|B||C|/n|  <=  lam sqrt(|B||C|)."""
    n, d = g.n, g.degree
    e = edge_count(g, B, C)
    lhs = Fraction(abs(n * e - d * len(B) * len(C)), n)
    rhs = resolve_lambda(g, lam) * math.sqrt(len(B) * len(C))
    return BoundReport("mixing", lhs, rhs, q=g.field.q, a=g.radius, size=len(B))


def paths2(g: DistanceGraph, E: VertexSet) -> int:
    """Ordered (u, v, w) in E^3 with u ~ v ~ w (u == w allowed)."""
    rows, eb = g.rows, E.bits
    return sum((rows[v] & eb).bit_count() ** 2 for v in E)


def _hinge_report(label, count, d_r, d_b, n, size, L, **meta) -> BoundReport:
    lhs = Fraction(abs(n * n * count - d_r * d_b * size ** 3), n * n)
    d = max(d_r, d_b)
    rhs = 2 * L * d / n * size ** 2 + L * L * size
    return BoundReport(label, lhs, rhs, size=size, extension=d_r != d_b, **meta)


def verify_paths2_bound(g: DistanceGraph, E: VertexSet, lam=None) -> BoundReport:
    """|p_2(E) - (d/n)^2 |E|^3|  <=  2(lam d/n)|E|^2 + lam^2 |E|."""
    return _hinge_report("paths2", paths2(g, E), g.degree, g.degree, g.n, len(E),
                         resolve_lambda(g, lam), q=g.field.q, a=g.radius, b=g.radius)


# -- colorings ---------------------------------------------------------------

def colored_hinges(col: RegularColoring, r: int, b: int, E: VertexSet) -> int:
    """Ordered (u, v, w) in E^3 with uv colored r and vw colored b."""
    rr, rb = col.graph(r).rows, col.graph(b).rows
    eb = E.bits
    return sum((rr[v] & eb).bit_count() * (rb[v] & eb).bit_count() for v in E)


def verify_hinge_bound(col: RegularColoring, r: int, b: int, E: VertexSet,
                       lam=None) -> BoundReport:
    """Colored-hinge deviation from (d_r d_b / n^2)|E|^3.

    With d_r != d_b (never the case for a single quadratic form) the main
    term uses d_r d_b and the error term max(d_r, d_b); such reports are
    flagged as an extension.
    """
    gr, gb = col.graph(r), col.graph(b)
    L = max(resolve_lambda(gr, lam), resolve_lambda(gb, lam))
    return _hinge_report("hinge", colored_hinges(col, r, b, E), gr.degree, gb.degree,
                         col.n, len(E), L, q=col.field.q, a=r, b=b)


def pinned_hinges(col: RegularColoring, x, E: VertexSet, a: int, b: int) -> int:
    """|{(y, z) in E^2 : Q(x - y) = a, Q(x - z) = b}| for a fixed pivot x."""
    v = _as_index(col, x)
    eb = E.bits
    return (col.graph(a).rows[v] & eb).bit_count() * (col.graph(b).rows[v] & eb).bit_count()


def hinge_triple_count(col: RegularColoring, E: VertexSet, a: int, b: int) -> int:
    """|{(x, y, z) in E^3 : Q(x - y) = a, Q(x - z) = b}|, summed pivot by pivot."""
    return sum(pinned_hinges(col, x, E, a, b) for x in E)


def hinge_estimate(col: RegularColoring, E: VertexSet, a: int, b: int,
                   lam=None) -> BoundReport:
    """Relative deviation of the hinge count from |E|^3 d_a d_b / n^2.

    rhs is the hinge bound divided by the main term, so this is the
    finite-q form of "(1 + o(1)) |E|^3 q^-2".
    """
    if len(E) == 0:
        raise ValueError("relative deviation undefined for empty E")
    ga, gb = col.graph(a), col.graph(b)
    n, size = col.n, len(E)
    L = max(resolve_lambda(ga, lam), resolve_lambda(gb, lam))
    main = Fraction(ga.degree * gb.degree * size ** 3, n * n)
    count = hinge_triple_count(col, E, a, b)
    lhs = abs(count / main - 1)
    d = max(ga.degree, gb.degree)
    rhs = (2 * L * d / n * size ** 2 + L * L * size) / float(main)
    return BoundReport("hinge_estimate", lhs, rhs, q=col.field.q, a=a, b=b, size=size,
                       extension=ga.degree != gb.degree)


def best_pin(col: RegularColoring, E: VertexSet, a: int, b: int) -> tuple[Point, int]:
    """Pivot x in E with the most pinned hinges; ties go to the lowest index."""
    if len(E) == 0:
        raise ValueError("best_pin needs a nonempty vertex set")
    best_v, best = -1, -1
    for v in E:
        c = pinned_hinges(col, v, E, a, b)
        if c > best:
            best_v, best = v, c
    return plane(col.field).point(best_v), best
