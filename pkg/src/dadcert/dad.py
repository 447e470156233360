"""Witness covers for dynamical asymptotic dimension at most 3^d - 1.

For generator set ``F = □_N`` the cover pieces are

    Ω_i = {x : 0 ∈ Dom(C(x) + e_i)},   i = 0, ..., 3^d - 1,

with ``C`` the greedy tiling and ``e_i`` the shift vectors.  The certificate
checks, point by point, that the pieces cover, and that every chain
component (the positions reachable from x by ``□_N``-steps whose partial
sums stay in the piece) is finite and at most ``(2D + 1)^d`` large.
"""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from .errors import PreconditionError
from .greedy import GreedyParams, default_params, torus_centers
from .lattice import Vector, cube_points
from .report import format_report
from .system import (
    ExtensionSpec,
    OdometerSpec,
    SeparatedPartition,
    System,
    SystemPoint,
    act,
    factor,
    separated_partition,
)
from .tiling import shift_vectors


@lru_cache(maxsize=None)
def _covering_indices(m: int, L: int, r: int, d: int, residue: Vector) -> tuple[int, ...]:
    D, E = L - r, L + r
    centers = torus_centers(m, L, d, residue)
    out = []
    for i, e in enumerate(shift_vectors(E, d)):
        # 0 ∈ c + e + □_D for some lift c of a torus center; D < m/2 so the
        # nearest lift is the only candidate.
        for c in centers:
            if all(min((a + b) % m, m - (a + b) % m) <= D for a, b in zip(c, e)):
                out.append(i)
                break
    return tuple(out)


def covering_indices(spec: System, x: SystemPoint, params: GreedyParams,
                     partition: Optional[SeparatedPartition] = None) -> tuple[int, ...]:
    """All i with ``x ∈ Ω_i``, ascending."""
    p = partition or separated_partition(spec, params.L)
    residue = factor(x).residue(p.level)
    return _covering_indices(p.modulus, params.L, params.r, params.d, residue)


def cover_membership(spec: System, x: SystemPoint, i: int, params: GreedyParams) -> bool:
    """Whether ``0 ∈ Dom(C(x) + e_i)``."""
    if not 0 <= i < 3 ** params.d:
        raise PreconditionError(f"cover index {i} outside [0, {3 ** params.d})")
    return i in covering_indices(spec, x, params)


def pullback_cover(ext: ExtensionSpec, x: SystemPoint, i: int, params: GreedyParams) -> bool:
    """Membership of an extension point in ``π^{-1}(Ω_i)``."""
    return cover_membership(ext.base, factor(x, ext), i, params)


def covering_tile(spec: System, x: SystemPoint, i: int, params: GreedyParams) -> Optional[Vector]:
    """Center of the tile of ``C(x) + e_i`` containing the origin, if any."""
    p = separated_partition(spec, params.L)
    m, D = p.modulus, params.D
    e = shift_vectors(params.E, params.d)[i]
    for c in torus_centers(m, params.L, params.d, factor(x).residue(p.level)):
        # representative of c + e closest to the origin
        lifted = tuple(((a + b + m // 2) % m) - m // 2 for a, b in zip(c, e))
        if all(abs(a) <= D for a in lifted):
            return lifted
    return None


@dataclass(frozen=True)
class ChainComponent:
    base_point: SystemPoint
    cover: int
    positions: tuple[Vector, ...]
    saturated: bool

    @property
    def size(self) -> int:
        return len(self.positions)


def chain_component(
    spec: System,
    x: SystemPoint,
    i: int,
    N: int,
    params: GreedyParams,
    cap: Optional[int] = None,
) -> ChainComponent:
    """Breadth-first closure of {0} under ``□_N``-steps that stay inside Ω_i.

    Each visited position q is tested by acting on the point, i.e. by asking
    whether ``x·q ∈ Ω_i``.  Stops early once ``cap`` positions are collected,
    in which case ``saturated`` is False.
    """
    d = params.d
    if params.r ** 2 <= N * N * d:
        raise PreconditionError(f"need r^2 > N^2 d, got r={params.r}, N={N}, d={d}")
    bound = (2 * params.D + 1) ** d
    cap = bound + 1 if cap is None else cap
    if cap < bound + 1:
        raise PreconditionError(f"cap {cap} must exceed the bound {bound}")
    partition = separated_partition(spec, params.L)

    def inside(q: Vector) -> bool:
        return i in covering_indices(spec, act(x, q, spec), params, partition)

    origin = (0,) * d
    if not inside(origin):
        return ChainComponent(x, i, (), True)
    steps = cube_points(N, d)
    seen = {origin}
    queue = deque([origin])
    while queue:
        pos = queue.popleft()
        for s in steps:
            q = tuple(a + b for a, b in zip(pos, s))
            if q in seen or not inside(q):
                continue
            seen.add(q)
            if len(seen) >= cap:
                return ChainComponent(x, i, tuple(sorted(seen)), False)
            queue.append(q)
    return ChainComponent(x, i, tuple(sorted(seen)), True)


@dataclass
class Certificate:
    d: int
    N: int
    r: int
    L: int
    D: int
    E: int
    m: int
    level: int
    partition_size: int
    shift_count: int
    system: str
    points_checked: int = 0
    exhaustive: bool = True
    uncovered: int = 0
    colors_used: int = 0
    first_cover_counts: list[int] = field(default_factory=list)
    cover_population: list[int] = field(default_factory=list)
    chains_checked: int = 0
    max_chain: int = 0
    chain_bound: int = 0
    cap_hits: int = 0
    bound_violations: int = 0
    tile_violations: int = 0
    M: int = 0
    seed: Optional[int] = None
    passed: bool = False

    def to_text(self) -> str:
        return format_report([
            ("report", "certificate"),
            ("system", self.system),
            ("d", self.d),
            ("N", self.N),
            ("r", self.r),
            ("L", self.L),
            ("D", self.D),
            ("E", self.E),
            ("m", self.m),
            ("partition_level", self.level),
            ("partition_size", self.partition_size),
            ("shift_count", self.shift_count),
            ("points_checked", self.points_checked),
            ("exhaustive", self.exhaustive),
            ("seed", self.seed),
            ("uncovered", self.uncovered),
            ("colors_used", self.colors_used),
            ("first_cover_counts", ",".join(map(str, self.first_cover_counts))),
            ("cover_population", ",".join(map(str, self.cover_population))),
            ("chains_checked", self.chains_checked),
            ("max_chain", self.max_chain),
            ("chain_bound", self.chain_bound),
            ("cap_hits", self.cap_hits),
            ("bound_violations", self.bound_violations),
            ("tile_violations", self.tile_violations),
            ("M", self.M),
            ("pass", self.passed),
        ])


def _check_point(spec, x, params, N, cap, partition, cert, first_counts, population):
    covers = covering_indices(spec, x, params, partition)
    cert.points_checked += 1
    if not covers:
        cert.uncovered += 1
        return
    first_counts[covers[0]] += 1
    for i in covers:
        population[i] += 1
        chain = chain_component(spec, x, i, N, params, cap)
        cert.chains_checked += 1
        cert.max_chain = max(cert.max_chain, chain.size)
        if not chain.saturated:
            cert.cap_hits += 1
            continue
        if chain.size > cert.chain_bound:
            cert.bound_violations += 1
        tile = covering_tile(spec, x, i, params)
        D = params.D
        if tile is None or any(
            any(abs(a - b) > D for a, b in zip(p, tile)) for p in chain.positions
        ):
            cert.tile_violations += 1


def certify(
    spec: System,
    N: int,
    params: Optional[GreedyParams] = None,
    *,
    samples: int = 100,
    seed: int = 0,
    fiber_radius: int = 2,
    cap: Optional[int] = None,
) -> Certificate:
    """Build and check the 3^d-piece cover for generators ``□_N``.

    Odometers are checked at every residue of the partition level.  For an
    extension, ``samples`` points are drawn: residues cycle through all classes
    in order while fiber windows of radius ``fiber_radius`` come from
    ``random.Random(seed)``.
    """
    d = spec.d
    params = params or default_params(N, d)
    if params.N not in (None, N) or params.d != d:
        raise PreconditionError(f"params are for N={params.N}, d={params.d}; asked N={N}, d={d}")
    partition = separated_partition(spec, params.L)
    shifts = 3 ** d
    bound = (2 * params.D + 1) ** d
    is_ext = isinstance(spec, ExtensionSpec)
    cert = Certificate(
        d=d, N=N, r=params.r, L=params.L, D=params.D, E=params.E,
        m=partition.modulus, level=partition.level,
        partition_size=partition.size, shift_count=shifts,
        system=(f"extension(alphabet={spec.fiber_alphabet_size})" if is_ext else "odometer"),
        exhaustive=not is_ext, chain_bound=bound, M=bound,
        seed=seed if is_ext else None,
    )
    first_counts = [0] * shifts
    population = [0] * shifts
    if is_ext:
        rng = random.Random(seed)
        classes = partition.classes()
        for k in range(samples):
            x = spec.random_point(rng, classes[k % len(classes)], fiber_radius, partition.level)
            _check_point(spec, x, params, N, cap, partition, cert, first_counts, population)
    else:
        for x in spec.points(partition.level):
            _check_point(spec, x, params, N, cap, partition, cert, first_counts, population)

    cert.first_cover_counts = first_counts
    cert.cover_population = population
    cert.colors_used = sum(1 for c in first_counts if c)
    cert.passed = (
        cert.points_checked > 0
        and cert.uncovered == 0
        and cert.colors_used <= shifts
        and cert.cap_hits == 0
        and cert.bound_violations == 0
        and cert.tile_violations == 0
        and cert.max_chain <= bound
    )
    return cert
