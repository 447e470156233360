"""(r, D, E)-quasi-tilings of Z^d by cubes, and the 3^d shift covering check.

A tiling is given by its set of centers ``c``; the tiles are ``c + □_D``.  The
three validity conditions are

1. distinct tiles are disjoint,
2. distinct tiles are at Euclidean distance >= r,
3. some tile meets the cube □_E around the origin.

Only finitely many centers can be handed to a computer, so a
:class:`QuasiTilingWindow` claims to know every center inside ``□_W`` and
nothing outside it.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .errors import BudgetExceeded, DimensionMismatch, OverlapError, PreconditionError, WindowTooSmall
from .lattice import Vector, cube_gap_sq, cube_points, sup_norm
from .report import format_report

DEFAULT_BUDGET = 2**24


@dataclass(frozen=True)
class TilingParams:
    r: int
    D: int
    E: int

    def __post_init__(self):
        for name in ("r", "D", "E"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise PreconditionError(f"{name} must be a positive integer, got {value!r}")

    @property
    def shift_hypothesis(self) -> bool:
        """Whether D <= E <= 2D, the range in which the shift lemma applies."""
        return self.D <= self.E <= 2 * self.D

    def require_shift_hypothesis(self) -> None:
        if not self.shift_hypothesis:
            raise PreconditionError(
                f"shift lemma needs D <= E <= 2D, got D={self.D}, E={self.E}"
            )


@dataclass(frozen=True)
class QuasiTilingWindow:
    """All centers of a tiling that lie in ``□_window_radius``.

    ``d`` is inferred from the centers when omitted; an empty window must
    state it explicitly.
    """

    params: TilingParams
    window_radius: int
    centers: tuple[Vector, ...]
    d: int = 0

    def __post_init__(self):
        centers = tuple(sorted(set(tuple(c) for c in self.centers)))
        d = self.d or (len(centers[0]) if centers else 0)
        if d < 1:
            raise DimensionMismatch("empty window needs an explicit dimension")
        for c in centers:
            if len(c) != d:
                raise DimensionMismatch(f"center {c} is not in Z^{d}")
            if sup_norm(c) > self.window_radius:
                raise PreconditionError(f"center {c} lies outside the window □_{self.window_radius}")
        object.__setattr__(self, "centers", centers)
        object.__setattr__(self, "d", d)

    def dom(self) -> list[Vector]:
        return dom(self.centers, self.params.D)


@dataclass(frozen=True)
class Violation:
    condition: int
    witnesses: tuple
    message: str


@dataclass(frozen=True)
class Verdict:
    violations: tuple[Violation, ...] = ()

    @property
    def valid(self) -> bool:
        return not self.violations

    def conditions(self) -> set[int]:
        return {v.condition for v in self.violations}

    def __bool__(self) -> bool:
        return self.valid


def dom(centers: Sequence[Vector], D: int) -> list[Vector]:
    """Union of the tiles ``c + □_D``, sorted; overlapping tiles raise OverlapError."""
    centers = sorted(centers)
    for a, b in itertools.combinations(centers, 2):
        if cube_gap_sq(a, b, D) == 0:
            raise OverlapError(a, b)
    if not centers:
        return []
    offsets = cube_points(D, len(centers[0]))
    out = [tuple(x + s for x, s in zip(c, off)) for c in centers for off in offsets]
    out.sort()
    return out


def meets_origin_cube(c: Vector, D: int, E: int) -> bool:
    """Whether ``(c + □_D) ∩ □_E`` is non-empty."""
    return sup_norm(c) <= D + E


def check_tiling(t: QuasiTilingWindow) -> Verdict:
    """Check the three conditions, collecting every violation with its witnesses."""
    r, D, E = t.params.r, t.params.D, t.params.E
    found = []
    for a, b in itertools.combinations(t.centers, 2):
        gap = cube_gap_sq(a, b, D)
        if gap == 0:
            found.append(Violation(1, (a, b), f"tiles at {a} and {b} overlap"))
        if gap < r * r:
            found.append(Violation(2, (a, b), f"tiles at {a} and {b}: squared gap {gap} < {r * r}"))
    if not any(meets_origin_cube(c, D, E) for c in t.centers):
        found.append(Violation(3, (), f"no tile meets □_{E}"))
    found.sort(key=lambda v: v.condition)
    return Verdict(tuple(found))


def shift_vectors(E: int, d: int) -> list[Vector]:
    """The 3^d vectors with entries in {0, ±E}: zero first, then lexicographic."""
    if E < 1:
        raise PreconditionError(f"E must be >= 1, got {E}")
    if d < 1:
        raise DimensionMismatch(f"dimension must be >= 1, got {d}")
    rest = [v for v in itertools.product((-E, 0, E), repeat=d) if any(v)]
    return [(0,) * d] + rest


def first_covering_shift(t: QuasiTilingWindow) -> Optional[int]:
    """Smallest i with ``0 ∈ Dom(T) + e_i``, or None when no shift covers the origin.

    The answer is only trusted when the window reaches ``D + 2E``; smaller
    windows raise :class:`WindowTooSmall`.
    """
    D, E = t.params.D, t.params.E
    if t.window_radius < D + 2 * E:
        raise WindowTooSmall(
            f"window radius {t.window_radius} < D + 2E = {D + 2 * E}; coverage undecidable"
        )
    # Only centers with |c|_inf <= D + E can reach any -e_i.
    near = [c for c in t.centers if sup_norm(c) <= D + E]
    for i, e in enumerate(shift_vectors(E, t.d)):
        for c in near:
            if all(abs(ci + ei) <= D for ci, ei in zip(c, e)):
                return i
    return None


def _conflict_masks(points: list[Vector], params: TilingParams) -> list[int]:
    r2, D = params.r ** 2, params.D
    masks = [0] * len(points)
    for i, j in itertools.combinations(range(len(points)), 2):
        if cube_gap_sq(points[i], points[j], D) < r2:
            masks[i] |= 1 << j
            masks[j] |= 1 << i
    return masks


def enumerate_tilings(
    params: TilingParams, W: int, d: int, budget: int = DEFAULT_BUDGET
) -> Iterator[QuasiTilingWindow]:
    """Yield every center set inside ``□_W`` satisfying conditions (1)-(3).

    Depth-first over the points of □_W in lexicographic order, including a
    point before excluding it.  Branches are cut as soon as a pair violates
    condition (2) or no remaining point could satisfy condition (3).  Every
    visited search node counts against ``budget``.
    """
    if W < 0:
        raise PreconditionError(f"window radius must be >= 0, got {W}")
    points = cube_points(W, d)
    masks = _conflict_masks(points, params)
    reach = params.D + params.E
    core = [i for i, p in enumerate(points) if sup_norm(p) <= reach]
    last_core = core[-1] if core else -1
    n = len(points)
    visited = 0

    def walk(i: int, chosen: list[int], forbidden: int, has_core: bool):
        nonlocal visited
        visited += 1
        if visited > budget:
            raise BudgetExceeded(
                f"enumeration of □_{W} in Z^{d} exceeded {budget} candidates"
            )
        if not has_core and i > last_core:
            return
        if i == n:
            yield QuasiTilingWindow(params, W, tuple(points[k] for k in chosen), d)
            return
        if not forbidden >> i & 1:
            chosen.append(i)
            yield from walk(i + 1, chosen, forbidden | masks[i], has_core or sup_norm(points[i]) <= reach)
            chosen.pop()
        yield from walk(i + 1, chosen, forbidden, has_core)

    yield from walk(0, [], 0, False)


@dataclass(frozen=True)
class ShiftLemmaReport:
    d: int
    params: TilingParams
    window_radius: int
    enumerated_radius: int
    mode: str
    shift_count: int
    tilings_checked: int
    all_covered: bool
    counterexample: Optional[tuple[Vector, ...]] = None
    shift_usage: tuple[int, ...] = field(default=())

    def to_text(self) -> str:
        return format_report([
            ("report", "shift-lemma"),
            ("d", self.d),
            ("r", self.params.r),
            ("D", self.params.D),
            ("E", self.params.E),
            ("window_radius", self.window_radius),
            ("enumerated_radius", self.enumerated_radius),
            ("mode", self.mode),
            ("shift_count", self.shift_count),
            ("tilings_checked", self.tilings_checked),
            ("shift_usage", ",".join(map(str, self.shift_usage))),
            ("all_covered", self.all_covered),
            ("counterexample", self.counterexample),
        ])


def verify_shift_lemma(
    params: TilingParams,
    W: int,
    d: int,
    *,
    budget: int = DEFAULT_BUDGET,
    mode: str = "auto",
) -> ShiftLemmaReport:
    """Exhaustively check that some shift ``e_i`` covers the origin for every tiling.

    ``mode="full"`` enumerates every tiling of □_W.  ``mode="core"``
    enumerates only tilings of the decisive cube □_{D+E}, embedded in □_W:
    coverage of the origin by any shift, and condition (3), read only centers
    in □_{D+E}, while conditions (1)-(2) survive restriction, so the core
    tilings are exactly the restrictions of the full ones.  ``"auto"`` picks
    ``full`` when the window has at most log2(budget) points.
    """
    params.require_shift_hypothesis()
    D, E = params.D, params.E
    if W < D + 2 * E:
        raise PreconditionError(f"window radius {W} < D + 2E = {D + 2 * E}")
    if mode == "auto":
        mode = "full" if (2 * W + 1) ** d <= budget.bit_length() - 1 else "core"
    if mode not in ("full", "core"):
        raise PreconditionError(f"unknown enumeration mode {mode!r}")
    radius = W if mode == "full" else D + E

    usage: Counter[int] = Counter()
    checked = 0
    counterexample = None
    for t in enumerate_tilings(params, radius, d, budget):
        if radius != W:
            t = QuasiTilingWindow(params, W, t.centers, d)
        checked += 1
        i = first_covering_shift(t)
        if i is None:
            counterexample = t.centers
            break
        usage[i] += 1
    shifts = 3**d
    return ShiftLemmaReport(
        d=d,
        params=params,
        window_radius=W,
        enumerated_radius=radius,
        mode=mode,
        shift_count=shifts,
        tilings_checked=checked,
        all_covered=counterexample is None,
        counterexample=counterexample,
        shift_usage=tuple(usage[i] for i in range(shifts)),
    )
