"""Finite Euclidean distance graphs on F_q^2 and their spectra.

``G_q(Q, a)`` is the Cayley graph of (F_q^2, +) with connection set
``S = {s : Q(s) = a}``; for a != 0 the origin is not in S and S = -S, so
the graph is simple and undirected.  Spectra come from two independent
routes: a dense symmetric eigensolve of the adjacency matrix, and the
additive-character formula ``lambda_m = sum_{s in S} cos(2 pi Tr(m.s) / p)``.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field as dc_field
from functools import cached_property

import numpy as np

from .finite_field import FieldCtx
from .geometry import Point, QuadraticForm, plane, sphere_indices
from .reports import BoundReport

DENSE_VERTEX_CAP = 2401
RESIDUAL_TOL = 1e-8
SPECTRUM_TOL = 1e-6
IMAG_TOL = 1e-10


class GraphError(ValueError):
    pass


@dataclass(eq=False)
class DistanceGraph:
    field: FieldCtx
    form: QuadraticForm
    radius: int
    connection: np.ndarray      # vertex indices of S
    neighbors: np.ndarray       # (n, d): neighbors[v, j] = v + S[j]

    @property
    def n(self) -> int:
        return self.field.q ** 2

    @property
    def degree(self) -> int:
        return len(self.connection)

    @property
    def connection_set(self) -> frozenset[Point]:
        pl = plane(self.field)
        return frozenset(pl.point(s) for s in self.connection)

    @cached_property
    def rows(self) -> tuple[int, ...]:
        """Adjacency bitsets: bit u of rows[v] is set iff u ~ v."""
        out = []
        for nb in self.neighbors.tolist():
            r = 0
            for u in nb:
                r |= 1 << u
            out.append(r)
        return tuple(out)

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.rows[int(u)] >> int(v) & 1)

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def is_regular(self) -> bool:
        degs = self.degrees()
        return min(degs) == max(degs) == self.degree

    def adjacency_matrix(self, dtype=np.float64) -> np.ndarray:
        A = np.zeros((self.n, self.n), dtype=dtype)
        A[np.arange(self.n)[:, None], self.neighbors] = 1
        return A

    def edges(self):
        """Undirected edges (u, v) with u < v in vertex order."""
        for u, nb in enumerate(self.neighbors.tolist()):
            for v in sorted(nb):
                if u < v:
                    yield u, v

    @property
    def edge_count(self) -> int:
        return self.n * self.degree // 2


def build_distance_graph(field: FieldCtx, Q: QuadraticForm, a: int) -> DistanceGraph:
    if a == 0:
        raise GraphError("radius must be nonzero")
    if Q.is_degenerate():
        raise GraphError("quadratic form is degenerate")
    pl = plane(field)
    S = sphere_indices(Q, a)
    nbrs = pl.add_idx(np.arange(pl.n)[:, None], S[None, :])
    S.flags.writeable = False
    nbrs.flags.writeable = False
    return DistanceGraph(field, Q, a, S, nbrs)


# -- spectra ---------------------------------------------------------------

@dataclass
class Spectrum:
    eigenvalues: np.ndarray     # sorted descending
    degree: int
    method: str

    @property
    def principal(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def lam(self) -> float:
        """Largest |eigenvalue| after dropping one copy of the top eigenvalue."""
        if len(self.eigenvalues) < 2:
            return 0.0
        return float(np.max(np.abs(self.eigenvalues[1:])))

    def multiplicities(self, tol: float = SPECTRUM_TOL) -> list[tuple[float, int]]:
        out: list[tuple[float, int]] = []
        start = 0
        ev = self.eigenvalues
        for i in range(1, len(ev) + 1):
            if i == len(ev) or ev[start] - ev[i] > tol:
                out.append((float(np.mean(ev[start:i])), i - start))
                start = i
        return out

    def matches(self, other: "Spectrum", tol: float = SPECTRUM_TOL) -> bool:
        return len(self.eigenvalues) == len(other.eigenvalues) and \
            float(np.max(np.abs(self.eigenvalues - other.eigenvalues))) <= tol


def spectrum_dense(g: DistanceGraph, cap: int = DENSE_VERTEX_CAP) -> Spectrum:
    if g.n > cap:
        raise GraphError(f"n={g.n} exceeds dense cap {cap}; use spectrum_characters")
    A = g.adjacency_matrix()
    w, V = np.linalg.eigh(A)
    resid = np.linalg.norm(A @ V - V * w, axis=0)
    if resid.max() > RESIDUAL_TOL * max(1.0, g.degree):
        raise GraphError(f"eigensolver residual {resid.max():.3g} too large")
    ev = w[::-1].copy()
    if abs(ev[0] - g.degree) > RESIDUAL_TOL * max(1.0, g.degree):
        raise GraphError(f"principal eigenvalue {ev[0]} != degree {g.degree}")
    return Spectrum(ev, g.degree, "dense")


def character_sums(g: DistanceGraph) -> np.ndarray:
    """Complex sums sum_{s in S} exp(2 pi i Tr(m.s)/p), one per vertex m."""
    f, pl = g.field, plane(g.field)
    S = g.connection
    m = np.arange(pl.n)[:, None]
    dots = f.add_table[f.mul_table[pl.X1[m], pl.X1[S][None, :]],
                       f.mul_table[pl.X2[m], pl.X2[S][None, :]]]
    tr = f.trace_table[dots]
    roots = np.exp(2j * np.pi * np.arange(f.p) / f.p)
    return roots[tr].sum(axis=1)


def spectrum_characters(g: DistanceGraph) -> Spectrum:
    sums = character_sums(g)
    imag = float(np.max(np.abs(sums.imag))) if len(sums) else 0.0
    if imag > IMAG_TOL * max(1, g.degree):
        raise GraphError(f"character sums not real (|imag| = {imag:.3g})")
    ev = np.sort(sums.real)[::-1].copy()
    return Spectrum(ev, g.degree, "characters")


def compute_spectrum(g: DistanceGraph, method: str = "characters") -> Spectrum:
    if method == "dense":
        return spectrum_dense(g)
    if method == "characters":
        return spectrum_characters(g)
    raise GraphError(f"unknown spectrum method {method!r}")


def certify_ndl(g: DistanceGraph, lambda_claim: float | None = None,
                method: str = "characters") -> BoundReport:
    """Check g is an (q^2, d, lambda_claim)-graph; default claim 2 sqrt q."""
    q = g.field.q
    claim = 2 * math.sqrt(q) if lambda_claim is None else float(lambda_claim)
    spec = compute_spectrum(g, method)
    lam = spec.lam if g.is_regular() else math.inf
    return BoundReport("ndl", lam, claim, q=q, a=g.radius, size=g.n)


# -- colorings -------------------------------------------------------------

@dataclass(eq=False)
class RegularColoring:
    """K_{q^2} colored by Q(x - y) in F_q^*; pairs with Q(x - y) = 0 stay uncolored."""

    field: FieldCtx
    form: QuadraticForm
    color_graphs: dict[int, DistanceGraph] = dc_field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.field.q ** 2

    @property
    def colors(self) -> list[int]:
        return sorted(self.color_graphs)

    def graph(self, color: int) -> DistanceGraph:
        try:
            return self.color_graphs[color]
        except KeyError:
            raise GraphError(f"invalid color {color!r}; colors are 1..{self.field.q - 1}") from None

    def color_of(self, u: int, v: int) -> int | None:
        if u == v:
            return None
        c = int(self.form.values[plane(self.field).sub_idx(u, v)])
        return c or None

    def uncolored_degree(self) -> int:
        # isotropic nonzero vectors
        return int(np.count_nonzero(self.form.values == 0)) - 1

    def uncolored_pairs(self) -> int:
        return self.n * self.uncolored_degree() // 2

    def colored_pairs(self) -> int:
        return sum(g.edge_count for g in self.color_graphs.values())

    def common_degree(self) -> int | None:
        degs = {g.degree for g in self.color_graphs.values()}
        return degs.pop() if len(degs) == 1 else None

    def certify(self, lambda_claim: float | None = None,
                method: str = "characters") -> list[BoundReport]:
        return [certify_ndl(self.color_graphs[c], lambda_claim, method) for c in self.colors]

    def is_regularly_colored(self, lambda_claim: float | None = None) -> bool:
        return self.common_degree() is not None and all(r.passed for r in self.certify(lambda_claim))


def build_coloring(field: FieldCtx, Q: QuadraticForm) -> RegularColoring:
    if Q.is_degenerate():
        raise GraphError("quadratic form is degenerate")
    graphs = {c: build_distance_graph(field, Q, c) for c in field.nonzero()}
    return RegularColoring(field, Q, graphs)


# -- export ------------------------------------------------------------------

def write_edge_list(g: DistanceGraph, handle) -> None:
    for u, v in g.edges():
        handle.write(f"{u} {v}\n")


def write_spectrum_csv(spec: Spectrum, handle) -> None:
    w = csv.writer(handle, lineterminator="\n")
    w.writerow(("eigenvalue", "multiplicity"))
    for value, mult in spec.multiplicities():
        # avoid "-0.000000000"
        w.writerow((f"{value + 0.0:.9f}".replace("-0.000000000", "0.000000000"), mult))
