"""Exact integer geometry of Z^d.

Vectors are plain tuples of ints.  Every distance question is answered on
squared integers so nothing in here ever touches floating point.  Point sets
returned by this module are lists in lexicographic order.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DimensionMismatch

Vector = tuple[int, ...]


def vec(*coords: int) -> Vector:
    """Build a lattice vector; ``vec(1, 2)`` and ``vec([1, 2])`` both work."""
    if len(coords) == 1 and not isinstance(coords[0], int):
        coords = tuple(coords[0])
    if not coords:
        raise DimensionMismatch("lattice vectors need at least one coordinate")
    return tuple(int(c) for c in coords)


def zero(d: int) -> Vector:
    if d < 1:
        raise DimensionMismatch(f"dimension must be >= 1, got {d}")
    return (0,) * d


def _same_dim(u: Sequence[int], v: Sequence[int]) -> None:
    if len(u) != len(v):
        raise DimensionMismatch(f"dimension mismatch: {len(u)} vs {len(v)}")


def add(u: Vector, v: Vector) -> Vector:
    _same_dim(u, v)
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Vector, v: Vector) -> Vector:
    _same_dim(u, v)
    return tuple(a - b for a, b in zip(u, v))


def neg(u: Vector) -> Vector:
    return tuple(-a for a in u)


def sup_norm(u: Sequence[int]) -> int:
    return max((abs(a) for a in u), default=0)


def norm_sq(u: Sequence[int]) -> int:
    return sum(a * a for a in u)


def cube_points(l: int, d: int) -> list[Vector]:
    """All points of the cube {-l, ..., l}^d in lexicographic order.

    >>> cube_points(1, 1)
    [(-1,), (0,), (1,)]
    """
    if d < 1:
        raise DimensionMismatch(f"dimension must be >= 1, got {d}")
    if l < 0:
        raise ValueError(f"cube radius must be non-negative, got {l}")
    axis = range(-l, l + 1)
    return list(itertools.product(axis, repeat=d))


def translate(points: Iterable[Vector], v: Vector) -> list[Vector]:
    """Translate every point by ``v``; result is sorted."""
    out = []
    for p in points:
        _same_dim(p, v)
        out.append(tuple(a + b for a, b in zip(p, v)))
    out.sort()
    return out


def cube_gap_sq(c1: Vector, c2: Vector, D: int) -> int:
    """Squared Euclidean distance between the cubes ``c1 + □_D`` and ``c2 + □_D``.

    Per axis the two integer intervals are ``2D`` apart at worst, so the gap
    along axis i is ``max(0, |c1_i - c2_i| - 2D)``.  Zero exactly when the
    cubes share a lattice point.
    """
    _same_dim(c1, c2)
    total = 0
    for a, b in zip(c1, c2):
        g = abs(a - b) - 2 * D
        if g > 0:
            total += g * g
    return total


def in_euclidean_ball(n: Vector, R: int) -> bool:
    return norm_sq(n) <= R * R


def ball_points(R: int, d: int) -> list[Vector]:
    """Lattice points of the closed Euclidean ball of radius ``R``."""
    return [p for p in cube_points(R, d) if in_euclidean_ball(p, R)]


@dataclass(frozen=True)
class CubeWindow:
    """The cube ``center + □_radius``."""

    center: Vector
    radius: int

    def __post_init__(self):
        if self.radius < 0:
            raise ValueError(f"cube radius must be non-negative, got {self.radius}")
        if len(self.center) < 1:
            raise DimensionMismatch("cube center needs at least one coordinate")

    @property
    def dim(self) -> int:
        return len(self.center)

    def __len__(self) -> int:
        return (2 * self.radius + 1) ** self.dim

    def __contains__(self, p) -> bool:
        _same_dim(p, self.center)
        return all(abs(a - b) <= self.radius for a, b in zip(p, self.center))

    def points(self) -> list[Vector]:
        return translate(cube_points(self.radius, self.dim), self.center)

    def intersects(self, other: CubeWindow) -> bool:
        _same_dim(self.center, other.center)
        reach = self.radius + other.radius
        return all(abs(a - b) <= reach for a, b in zip(self.center, other.center))
