"""Effectively represented free Z^d Cantor systems.

An odometer is the inverse limit of ``(Z/m_k)^d`` along a divisibility chain
``m_1 | m_2 | ... | m_K`` with Z^d acting by translation.  A point is known
through finitely many tower levels.  An extension multiplies the odometer by
the full shift ``A^{Z^d}``; its points additionally carry a finite window of
fiber symbols.  Both act diagonally and the projection onto the odometer is
the factor map.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator, Mapping, Optional, Union

from .errors import DimensionMismatch, InsufficientDepth, PreconditionError
from .lattice import Vector, cube_points, sup_norm


@dataclass(frozen=True)
class OdometerSpec:
    d: int
    moduli: tuple[int, ...]

    def __post_init__(self):
        moduli = tuple(int(m) for m in self.moduli)
        object.__setattr__(self, "moduli", moduli)
        if self.d < 1:
            raise PreconditionError(f"dimension must be >= 1, got {self.d}")
        if not moduli:
            raise PreconditionError("odometer needs at least one modulus")
        if moduli[0] < 2:
            raise PreconditionError(f"first modulus must be >= 2, got {moduli[0]}")
        for a, b in zip(moduli, moduli[1:]):
            if b <= a or b % a:
                raise PreconditionError(f"moduli must form a strict divisibility chain: {a} then {b}")

    @property
    def base(self) -> OdometerSpec:
        return self

    @property
    def depth(self) -> int:
        return len(self.moduli)

    def modulus(self, level: int) -> int:
        """Modulus at a 1-based tower level."""
        if not 1 <= level <= self.depth:
            raise InsufficientDepth(f"tower has levels 1..{self.depth}, asked for {level}")
        return self.moduli[level - 1]

    def point(self, residue, level: Optional[int] = None) -> SystemPoint:
        """The point whose level-``level`` residue is ``residue`` (levels below are reductions)."""
        level = self.depth if level is None else level
        m = self.modulus(level)
        residue = tuple(int(a) % m for a in residue)
        if len(residue) != self.d:
            raise DimensionMismatch(f"residue {residue} is not in (Z/{m})^{self.d}")
        levels = tuple(tuple(a % mk for a in residue) for mk in self.moduli[:level])
        return SystemPoint(levels)

    def points(self, level: Optional[int] = None) -> Iterator[SystemPoint]:
        """Every point known to ``level``, in lexicographic residue order."""
        level = self.depth if level is None else level
        m = self.modulus(level)
        for residue in itertools.product(range(m), repeat=self.d):
            yield self.point(residue, level)

    def validate(self, x: SystemPoint) -> None:
        if len(x.residues) > self.depth:
            raise InsufficientDepth(f"point has {len(x.residues)} levels, tower only {self.depth}")
        for k, res in enumerate(x.residues):
            m = self.moduli[k]
            if len(res) != self.d:
                raise DimensionMismatch(f"level {k + 1} residue {res} is not in (Z/{m})^{self.d}")
            if any(not 0 <= a < m for a in res):
                raise PreconditionError(f"level {k + 1} residue {res} not reduced mod {m}")
            if k and any(a % self.moduli[k - 1] != b for a, b in zip(res, x.residues[k - 1])):
                raise PreconditionError(f"levels {k} and {k + 1} are incompatible")


@dataclass(frozen=True)
class ExtensionSpec:
    """Odometer times the full shift on ``fiber_alphabet_size`` symbols."""

    base: OdometerSpec
    fiber_alphabet_size: int

    def __post_init__(self):
        if self.fiber_alphabet_size < 2:
            raise PreconditionError(
                f"fiber alphabet needs >= 2 symbols, got {self.fiber_alphabet_size}"
            )

    @property
    def d(self) -> int:
        return self.base.d

    def validate(self, x: SystemPoint) -> None:
        self.base.validate(x)
        if x.fiber is None:
            raise PreconditionError("extension points need a fiber window")
        if x.fiber.d != self.d:
            raise DimensionMismatch("fiber window dimension differs from the system")
        if any(not 0 <= s < self.fiber_alphabet_size for s in x.fiber.symbols):
            raise PreconditionError("fiber symbol outside the alphabet")

    def random_point(self, rng: random.Random, residue, radius: int, level: Optional[int] = None) -> SystemPoint:
        base = self.base.point(residue, level)
        count = (2 * radius + 1) ** self.d
        symbols = tuple(rng.randrange(self.fiber_alphabet_size) for _ in range(count))
        return SystemPoint(base.residues, FiberWindow(self.d, radius, symbols))


System = Union[OdometerSpec, ExtensionSpec]


@dataclass(frozen=True)
class FiberWindow:
    """Fiber symbols on ``□_radius``, listed in lexicographic point order.

    ``radius == -1`` is the empty window, which is what remains after
    translating a window further than its own radius.
    """

    d: int
    radius: int
    symbols: tuple[int, ...]

    def __post_init__(self):
        if self.radius < -1:
            raise PreconditionError(f"fiber window radius must be >= -1, got {self.radius}")
        expected = (2 * self.radius + 1) ** self.d if self.radius >= 0 else 0
        if len(self.symbols) != expected:
            raise PreconditionError(
                f"fiber window of radius {self.radius} needs {expected} symbols, got {len(self.symbols)}"
            )

    @classmethod
    def from_mapping(cls, d: int, radius: int, values: Mapping[Vector, int]) -> FiberWindow:
        pts = cube_points(radius, d) if radius >= 0 else []
        missing = [p for p in pts if p not in values]
        if missing:
            raise PreconditionError(f"fiber window undefined at {missing[0]}")
        return cls(d, radius, tuple(values[p] for p in pts))

    def _index(self, p: Vector) -> int:
        side = 2 * self.radius + 1
        idx = 0
        for a in p:
            idx = idx * side + (a + self.radius)
        return idx

    def __getitem__(self, p: Vector) -> int:
        if len(p) != self.d:
            raise DimensionMismatch(f"{p} is not in Z^{self.d}")
        if sup_norm(p) > self.radius:
            raise KeyError(p)
        return self.symbols[self._index(p)]

    def as_dict(self) -> dict[Vector, int]:
        if self.radius < 0:
            return {}
        return dict(zip(cube_points(self.radius, self.d), self.symbols))

    def shifted(self, n: Vector) -> FiberWindow:
        """The window seen from ``x·n``: new symbol at p is the old symbol at p + n."""
        radius = max(self.radius - sup_norm(n), -1)
        if radius < 0:
            return FiberWindow(self.d, -1, ())
        symbols = tuple(
            self[tuple(a + b for a, b in zip(p, n))] for p in cube_points(radius, self.d)
        )
        return FiberWindow(self.d, radius, symbols)


@dataclass(frozen=True)
class SystemPoint:
    """Residues for tower levels 1..k, plus a fiber window on extensions."""

    residues: tuple[Vector, ...]
    fiber: Optional[FiberWindow] = None

    def __post_init__(self):
        object.__setattr__(self, "residues", tuple(tuple(int(a) for a in r) for r in self.residues))

    @property
    def depth(self) -> int:
        return len(self.residues)

    def residue(self, level: int) -> Vector:
        if not 1 <= level <= self.depth:
            raise InsufficientDepth(f"point is known to level {self.depth}, asked for {level}")
        return self.residues[level - 1]


@dataclass(frozen=True)
class SeparatedPartition:
    """Residue classes at one tower level, used as the clopen pieces U_c.

    ``modulus >= 4 * sep_radius + 1`` makes the translates ``U_c·n`` over
    ``n ∈ □_{2L}`` pairwise disjoint.  :meth:`classes` fixes the stage order.
    """

    d: int
    level: int
    modulus: int
    sep_radius: int

    def __post_init__(self):
        if self.modulus < 4 * self.sep_radius + 1:
            raise PreconditionError(
                f"modulus {self.modulus} is not separated for L={self.sep_radius}; "
                f"requires modulus >= {4 * self.sep_radius + 1}"
            )

    @property
    def size(self) -> int:
        return self.modulus ** self.d

    def classes(self) -> list[Vector]:
        return list(itertools.product(range(self.modulus), repeat=self.d))

    def class_of(self, x: SystemPoint) -> Vector:
        return x.residue(self.level)


def act(x: SystemPoint, n: Vector, spec: System) -> SystemPoint:
    """The right action ``x·n``."""
    if len(n) != spec.d:
        raise DimensionMismatch(f"{n} is not in Z^{spec.d}")
    moduli = spec.base.moduli
    if x.depth > len(moduli):
        raise InsufficientDepth(f"point has {x.depth} levels, tower only {len(moduli)}")
    residues = tuple(
        tuple((a + b) % m for a, b in zip(res, n)) for res, m in zip(x.residues, moduli)
    )
    fiber = x.fiber.shifted(n) if x.fiber is not None else None
    return SystemPoint(residues, fiber)


def separated_partition(spec: System, L: int) -> SeparatedPartition:
    """Residue classes at the shallowest level with modulus >= 4L + 1."""
    if L < 1:
        raise PreconditionError(f"L must be >= 1, got {L}")
    base = spec.base
    need = 4 * L + 1
    for k, m in enumerate(base.moduli, start=1):
        if m >= need:
            return SeparatedPartition(base.d, k, m, L)
    raise InsufficientDepth(
        f"no tower level is separated for L={L}: requires modulus ≥ {need}, "
        f"deepest is {base.moduli[-1]}"
    )


def membership(x: SystemPoint, c: Vector, n: Vector, p: SeparatedPartition) -> bool:
    """Whether ``x·n`` lies in the piece ``U_c``."""
    if len(c) != p.d or len(n) != p.d:
        raise DimensionMismatch("class and offset must live in the partition's dimension")
    res = x.residue(p.level)
    m = p.modulus
    return all((a + b - ci) % m == 0 for a, b, ci in zip(res, n, c))


def factor(x: SystemPoint, ext: Optional[ExtensionSpec] = None) -> SystemPoint:
    """Project an extension point onto the odometer (drop the fiber)."""
    return SystemPoint(x.residues)
