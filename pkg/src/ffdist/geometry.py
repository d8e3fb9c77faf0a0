"""Points of F_q^2, binary quadratic forms, SO_2(F_q) and rigid motions.

Points are ``Point(x1, x2)`` tuples of field ints.  Vectorised code works on
vertex indices ``x1 * q + x2``, which is the lexicographic enumeration of
F_q^2 used by every graph in the package.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import NamedTuple

import numpy as np

from .finite_field import FieldCtx


class GeometryError(ValueError):
    pass


class Point(NamedTuple):
    x1: int
    x2: int


class Rotation(NamedTuple):
    m11: int
    m12: int
    m21: int
    m22: int


class TriangleSignature(NamedTuple):
    s_xy: int
    s_xz: int
    s_yz: int


@dataclass(frozen=True)
class RigidMotion:
    rotation: Rotation
    translation: Point


# -- planes ---------------------------------------------------------------

class Plane:
    """Vectorised view of F_q^2 for one field."""

    def __init__(self, field: FieldCtx):
        self.field = field
        q = field.q
        self.n = q * q
        idx = np.arange(self.n)
        self.X1 = idx // q
        self.X2 = idx % q

    def index(self, x: Point) -> int:
        return x[0] * self.field.q + x[1]

    def point(self, v: int) -> Point:
        q = self.field.q
        return Point(int(v) // q, int(v) % q)

    def points(self) -> list[Point]:
        return [self.point(v) for v in range(self.n)]

    def add_idx(self, u, v):
        f = self.field
        return f.add_table[self.X1[u], self.X1[v]] * f.q + f.add_table[self.X2[u], self.X2[v]]

    def sub_idx(self, u, v):
        f = self.field
        return f.sub_table[self.X1[u], self.X1[v]] * f.q + f.sub_table[self.X2[u], self.X2[v]]

    def neg_idx(self, u):
        f = self.field
        return f.neg_table[self.X1[u]] * f.q + f.neg_table[self.X2[u]]

    def det_idx(self, u, w):
        """det of the 2x2 matrix with columns u, w (index arrays)."""
        f = self.field
        return f.sub_table[f.mul_table[self.X1[u], self.X2[w]],
                           f.mul_table[self.X2[u], self.X1[w]]]

    def rotate_idx(self, rot: Rotation, u):
        f = self.field
        x1, x2 = self.X1[u], self.X2[u]
        y1 = f.add_table[f.mul_table[rot.m11, x1], f.mul_table[rot.m12, x2]]
        y2 = f.add_table[f.mul_table[rot.m21, x1], f.mul_table[rot.m22, x2]]
        return y1 * f.q + y2

    @cached_property
    def euclidean(self) -> "QuadraticForm":
        return QuadraticForm.euclidean(self.field)


@lru_cache(maxsize=None)
def plane(field: FieldCtx) -> Plane:
    return Plane(field)


# -- quadratic forms --------------------------------------------------------

@dataclass(frozen=True)
class QuadraticForm:
    """Q(x) = a*x1^2 + b*x1*x2 + c*x2^2 over ``field``."""

    field: FieldCtx
    a: int
    b: int
    c: int

    @classmethod
    def euclidean(cls, field: FieldCtx) -> "QuadraticForm":
        return cls(field, 1, 0, 1)

    @classmethod
    def from_ints(cls, field: FieldCtx, a: int, b: int, c: int) -> "QuadraticForm":
        return cls(field, field.element(a), field.element(b), field.element(c))

    @property
    def coefficients(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def discriminant(self) -> int:
        f = self.field
        four_ac = f.mul(f.element(4), f.mul(self.a, self.c))
        return f.sub(f.square(self.b), four_ac)

    def is_degenerate(self) -> bool:
        return self.discriminant() == 0

    def is_euclidean(self) -> bool:
        return self.coefficients == (1, 0, 1)

    def __call__(self, x: Point) -> int:
        f = self.field
        x1, x2 = x
        return f.add(f.add(f.mul(self.a, f.square(x1)), f.mul(self.b, f.mul(x1, x2))),
                     f.mul(self.c, f.square(x2)))

    @cached_property
    def values(self) -> np.ndarray:
        """Q evaluated at every vertex index."""
        f, pl = self.field, plane(self.field)
        x1, x2 = pl.X1, pl.X2
        m = f.mul_table
        t = f.add_table[f.add_table[m[self.a, m[x1, x1]], m[self.b, m[x1, x2]]],
                        m[self.c, m[x2, x2]]]
        t.flags.writeable = False
        return t

    def __str__(self):
        return f"{self.a},{self.b},{self.c}"


def norm(field: FieldCtx, x: Point) -> int:
    """x1^2 + x2^2."""
    return field.add(field.square(x[0]), field.square(x[1]))


def eval_form(Q: QuadraticForm, x: Point) -> int:
    return Q(x)


def sphere_indices(Q: QuadraticForm, a: int) -> np.ndarray:
    if Q.is_degenerate():
        raise GeometryError("quadratic form is degenerate")
    return np.nonzero(Q.values == a)[0]


def sphere(Q: QuadraticForm, a: int) -> frozenset[Point]:
    """All x in F_q^2 with Q(x) = a (centred at the origin)."""
    pl = plane(Q.field)
    return frozenset(pl.point(v) for v in sphere_indices(Q, a))


# -- rotations and rigid motions --------------------------------------------

def is_orthogonal(field: FieldCtx, m: Rotation) -> bool:
    f = field
    c11 = f.add(f.square(m.m11), f.square(m.m21))
    c22 = f.add(f.square(m.m12), f.square(m.m22))
    c12 = f.add(f.mul(m.m11, m.m12), f.mul(m.m21, m.m22))
    return c11 == 1 and c22 == 1 and c12 == 0


def determinant(field: FieldCtx, m: Rotation) -> int:
    return field.sub(field.mul(m.m11, m.m22), field.mul(m.m12, m.m21))


@lru_cache(maxsize=None)
def so2_elements(field: FieldCtx) -> tuple[Rotation, ...]:
    """SO_2(F_q) as matrices ((u, -v), (v, u)) with u^2 + v^2 = 1."""
    f = field
    out = []
    for u in range(f.q):
        for v in range(f.q):
            if f.add(f.square(u), f.square(v)) == 1:
                out.append(Rotation(u, f.neg(v), v, u))
    return tuple(out)


def so2_exhaustive(field: FieldCtx) -> tuple[Rotation, ...]:
    """SO_2 by brute force over all q^4 matrices; reference for so2_elements."""
    r = range(field.q)
    return tuple(m for m in (Rotation(*e) for e in itertools.product(r, repeat=4))
                 if is_orthogonal(field, m) and determinant(field, m) == 1)


@lru_cache(maxsize=None)
def o2_elements(field: FieldCtx) -> tuple[Rotation, ...]:
    """Full orthogonal group: SO_2 together with the reflections ((u, v), (v, -u))."""
    f = field
    refl = tuple(Rotation(r.m11, r.m21, r.m21, f.neg(r.m11)) for r in so2_elements(field))
    return so2_elements(field) + refl


def identity_motion() -> RigidMotion:
    return RigidMotion(Rotation(1, 0, 0, 1), Point(0, 0))


def rotate(field: FieldCtx, rot: Rotation, x: Point) -> Point:
    f = field
    return Point(f.add(f.mul(rot.m11, x[0]), f.mul(rot.m12, x[1])),
                 f.add(f.mul(rot.m21, x[0]), f.mul(rot.m22, x[1])))


def apply(field: FieldCtx, m: RigidMotion, x: Point) -> Point:
    """O(x) + tau."""
    y = rotate(field, m.rotation, x)
    return Point(field.add(y[0], m.translation[0]), field.add(y[1], m.translation[1]))


def rigid_motions(field: FieldCtx):
    """Every translation-rotation pair; q^2 * |SO_2| motions."""
    for rot in so2_elements(field):
        for t1 in range(field.q):
            for t2 in range(field.q):
                yield RigidMotion(rot, Point(t1, t2))


def sub_points(field: FieldCtx, x: Point, y: Point) -> Point:
    return Point(field.sub(x[0], y[0]), field.sub(x[1], y[1]))


def add_points(field: FieldCtx, x: Point, y: Point) -> Point:
    return Point(field.add(x[0], y[0]), field.add(x[1], y[1]))


# -- triangles -----------------------------------------------------------

def signature(field: FieldCtx, x: Point, y: Point, z: Point) -> TriangleSignature:
    return TriangleSignature(norm(field, sub_points(field, x, y)),
                             norm(field, sub_points(field, x, z)),
                             norm(field, sub_points(field, y, z)))


def orientation(field: FieldCtx, x: Point, y: Point, z: Point) -> int:
    """det(y - x, z - x); zero exactly for degenerate triangles."""
    u, w = sub_points(field, y, x), sub_points(field, z, x)
    return field.sub(field.mul(u[0], w[1]), field.mul(u[1], w[0]))


def is_degenerate(field: FieldCtx, x: Point, y: Point, z: Point) -> bool:
    return orientation(field, x, y, z) == 0


def find_rigid_motion(field: FieldCtx, t1, t2, rotations=None) -> RigidMotion | None:
    """A motion sending t1[i] to t2[i] for i = 0, 1, 2, or None.

    For each rotation the translation is forced to t2[0] - O(t1[0]), so this
    covers all q^2 * |SO_2| motions.  Pass ``rotations=o2_elements(field)``
    to search the full orthogonal group instead.
    """
    rotations = so2_elements(field) if rotations is None else rotations
    for rot in rotations:
        tau = sub_points(field, t2[0], rotate(field, rot, t1[0]))
        m = RigidMotion(rot, tau)
        if apply(field, m, t1[1]) == t2[1] and apply(field, m, t1[2]) == t2[2]:
            return m
    return None
