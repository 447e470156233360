"""Staged greedy construction of an equivariant quasi-tiling.

Given a partition ``U_1, ..., U_s`` whose pieces are 2L-separated along
orbits, the centers are built in stages::

    C_1 = {n : x·n ∈ U_1}
    C_i = C_{i-1} ∪ {n : x·n ∈ U_i and (n + □_L) ∩ (C_{i-1} + □_L) = ∅}

and ``C_s(x)`` is an ``(r, L - r, L + r)``-tiling.  Two routes are provided:

* :func:`greedy_centers` for odometers.  Everything is m-periodic, so the
  stages run on the torus ``(Z/m)^d`` where each class contributes exactly
  one candidate, then the result is lifted to a window.
* :func:`greedy_from_labels` runs the set-builder literally on a finite
  window for any labelling ``n -> class of x·n``; this is the entry point for
  systems whose separated partition is supplied by the caller.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Hashable, Optional, Sequence

from .errors import PreconditionError, WindowTooSmall
from .lattice import Vector, cube_gap_sq, cube_points, sup_norm
from .system import SeparatedPartition, System, SystemPoint, factor, separated_partition
from .tiling import QuasiTilingWindow, TilingParams, Verdict, Violation, check_tiling


@dataclass(frozen=True)
class GreedyParams:
    """Parameter chain N -> r -> L with derived tile radius D and reach E.

    The construction itself only needs ``r`` and ``L``; ``N`` (the generator
    radius) is optional and, when given, must satisfy ``r^2 > N^2 d``.
    """

    r: int
    L: int
    d: int
    N: Optional[int] = None

    def __post_init__(self):
        for name in ("r", "L", "d"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise PreconditionError(f"{name} must be a positive integer, got {value!r}")
        if self.N is not None:
            if not isinstance(self.N, int) or self.N < 1:
                raise PreconditionError(f"N must be a positive integer, got {self.N!r}")
            if self.r * self.r <= self.N * self.N * self.d:
                raise PreconditionError(
                    f"separation too small: need r^2 > N^2 d, got r={self.r}, N={self.N}, d={self.d}"
                )
        if self.L < 3 * self.r:
            raise PreconditionError(
                f"need L >= 3r so that E <= 2D, got L={self.L}, r={self.r}"
            )

    @property
    def D(self) -> int:
        return self.L - self.r

    @property
    def E(self) -> int:
        return self.L + self.r

    @property
    def tiling(self) -> TilingParams:
        return TilingParams(self.r, self.D, self.E)

    @property
    def required_modulus(self) -> int:
        return 4 * self.L + 1


def default_params(N: int, d: int) -> GreedyParams:
    """Smallest r with r^2 > N^2 d, and L = 3r."""
    if N < 1 or d < 1:
        raise PreconditionError(f"N and d must be positive, got N={N}, d={d}")
    r = math.isqrt(N * N * d) + 1
    return GreedyParams(r=r, L=3 * r, d=d, N=N)


def dependency_radius(R: int, L: int, s: int, period: Optional[int] = None) -> int:
    """Radius of the memberships that determine ``C_s(x) ∩ B_R``.

    Stage i looks ``2L`` further out than stage i + 1, hence ``R + 2L(s-1)``.
    With an m-periodic partition one full period of memberships already
    determines everything, so ``max(R, m)`` suffices.
    """
    if R < 0 or L < 1 or s < 1:
        raise PreconditionError(f"bad arguments R={R}, L={L}, s={s}")
    if period is not None:
        return max(R, period)
    return R + 2 * L * (s - 1)


def _torus_dist(a: Vector, b: Vector, m: int) -> int:
    worst = 0
    for x, y in zip(a, b):
        t = (x - y) % m
        t = min(t, m - t)
        if t > worst:
            worst = t
    return worst


@lru_cache(maxsize=None)
def torus_stages(m: int, L: int, d: int, residue: Vector) -> tuple[bool, ...]:
    """For each class c (lexicographic), whether its stage added a center.

    The stage-c candidates are the lifts of ``c - x`` mod m.  Same-class lifts
    are m > 4L apart so they never block one another; blocking by earlier
    centers is decided on the torus, which is exact because 2L < m / 2.
    """
    if m < 4 * L + 1:
        raise PreconditionError(f"modulus {m} is not separated for L={L}")
    kept: list[Vector] = []
    added = []
    for c in itertools.product(range(m), repeat=d):
        p = tuple((ci - xi) % m for ci, xi in zip(c, residue))
        ok = all(_torus_dist(p, q, m) > 2 * L for q in kept)
        if ok:
            kept.append(p)
        added.append(ok)
    return tuple(added)


@lru_cache(maxsize=None)
def torus_centers(m: int, L: int, d: int, residue: Vector) -> tuple[Vector, ...]:
    """``C_s(x)`` reduced mod m, in the order the stages added them."""
    classes = itertools.product(range(m), repeat=d)
    return tuple(
        tuple((ci - xi) % m for ci, xi in zip(c, residue))
        for c, added in zip(classes, torus_stages(m, L, d, residue))
        if added
    )


def _lift(points: Sequence[Vector], m: int, W: int) -> list[Vector]:
    out = []
    for p in points:
        axes = [range(-((W + a) // m), (W - a) // m + 1) for a in p]
        for ks in itertools.product(*axes):
            out.append(tuple(a + k * m for a, k in zip(p, ks)))
    out.sort()
    return out


def greedy_centers(
    spec: System,
    x: SystemPoint,
    params: GreedyParams,
    W: Optional[int] = None,
    partition: Optional[SeparatedPartition] = None,
) -> QuasiTilingWindow:
    """``C_s(x) ∩ □_W`` for an odometer (or extension) point.

    ``W`` defaults to one period m and may not be smaller.
    """
    if spec.d != params.d:
        raise PreconditionError(f"system is {spec.d}-dimensional, params are for d={params.d}")
    p = partition or separated_partition(spec, params.L)
    m = p.modulus
    W = m if W is None else W
    if W < m:
        raise WindowTooSmall(f"window radius {W} is below one period {m}")
    residue = factor(x).residue(p.level)
    return _lifted_window(m, params.r, params.L, params.d, residue, W)


@lru_cache(maxsize=4096)
def _lifted_window(m: int, r: int, L: int, d: int, residue: Vector, W: int) -> QuasiTilingWindow:
    centers = _lift(torus_centers(m, L, d, residue), m, W)
    return QuasiTilingWindow(TilingParams(r, L - r, L + r), W, tuple(centers), d)


def greedy_stage_sets(
    spec: System, x: SystemPoint, params: GreedyParams, W: Optional[int] = None
) -> list[frozenset[Vector]]:
    """``C_1 ∩ □_W, ..., C_s ∩ □_W`` (one entry per partition class)."""
    p = separated_partition(spec, params.L)
    m = p.modulus
    W = m if W is None else W
    residue = factor(x).residue(p.level)
    flags = torus_stages(m, params.L, params.d, residue)
    current: set[Vector] = set()
    out = []
    for c, added in zip(p.classes(), flags):
        if added:
            current.update(_lift([tuple((ci - xi) % m for ci, xi in zip(c, residue))], m, W))
        out.append(frozenset(current))
    return out


def greedy_from_labels(
    label: Callable[[Vector], Hashable],
    stages: Sequence[Hashable],
    L: int,
    W: int,
    d: int,
) -> list[Vector]:
    """Run the staged set-builder literally and return ``C_s ∩ □_W``.

    ``label(n)`` names the piece containing ``x·n``; ``stages`` lists the
    pieces in stage order (labels not listed never contribute).  Labels are
    read on ``□_{W + 2L(s-1)}``, the dependency radius of the window.
    Same-stage candidates must not block each other; a partition that is not
    2L-separated raises :class:`PreconditionError`.
    """
    s = len(stages)
    rank = {c: i for i, c in enumerate(stages)}
    outer = dependency_radius(W, L, s)
    pts = cube_points(outer, d)
    by_stage: list[list[Vector]] = [[] for _ in range(s)]
    for n in pts:
        i = rank.get(label(n))
        if i is not None:
            by_stage[i].append(n)

    reach = 2 * L
    centers: list[Vector] = []
    for i, candidates in enumerate(by_stage):
        radius = outer - reach * i
        fresh = [
            n for n in candidates
            if sup_norm(n) <= radius
            and not any(all(abs(a - b) <= reach for a, b in zip(n, c)) for c in centers)
        ]
        for a, b in itertools.combinations(fresh, 2):
            if sup_norm(tuple(u - v for u, v in zip(a, b))) <= reach:
                raise PreconditionError(
                    f"stage {stages[i]!r} adds {a} and {b} whose L-cubes overlap; "
                    "partition is not 2L-separated"
                )
        centers.extend(fresh)
    return sorted(c for c in centers if sup_norm(c) <= W)


def odometer_labels(x: SystemPoint, partition: SeparatedPartition) -> Callable[[Vector], Vector]:
    res = x.residue(partition.level)
    m = partition.modulus
    return lambda n: tuple((a + b) % m for a, b in zip(res, n))


def greedy_centers_direct(
    spec: System, x: SystemPoint, params: GreedyParams, W: Optional[int] = None
) -> QuasiTilingWindow:
    """Same output as :func:`greedy_centers`, but via the literal set-builder.

    Costs ``O(s * (W + 2Ls)^d)``; only practical for small moduli.
    """
    p = separated_partition(spec, params.L)
    W = p.modulus if W is None else W
    centers = greedy_from_labels(
        odometer_labels(factor(x), p), p.classes(), params.L, W, params.d
    )
    return QuasiTilingWindow(params.tiling, W, tuple(centers), params.d)


def check_greedy_output(t: QuasiTilingWindow, params: GreedyParams) -> Verdict:
    """Check the tiling conditions for ``(r, L-r, L+r)`` plus the stronger greedy claims.

    Beyond :func:`check_tiling` this reports condition 4 when two L-cubes
    around centers meet, and condition 5 when ``□_L ∩ (C + □_L)`` is empty.
    """
    if t.params != params.tiling:
        raise PreconditionError(f"window carries {t.params}, expected {params.tiling}")
    L = params.L
    if t.window_radius < 2 * L:
        raise WindowTooSmall(f"window radius {t.window_radius} cannot decide reach 2L = {2 * L}")
    found = list(check_tiling(t).violations)
    for a, b in itertools.combinations(t.centers, 2):
        if cube_gap_sq(a, b, L) == 0:
            found.append(Violation(4, (a, b), f"L-cubes at {a} and {b} overlap"))
    if not any(sup_norm(c) <= 2 * L for c in t.centers):
        found.append(Violation(5, (), f"□_{L} misses C + □_{L}"))
    found.sort(key=lambda v: v.condition)
    return Verdict(tuple(found))
