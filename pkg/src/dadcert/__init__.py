"""Constructive witnesses for dynamical asymptotic dimension <= 3^d - 1 of free Z^d odometers."""
from .dad import Certificate, ChainComponent, certify, chain_component, cover_membership, pullback_cover
from .errors import (
    BudgetExceeded,
    DadcertError,
    DimensionMismatch,
    InsufficientDepth,
    OverlapError,
    PreconditionError,
    WindowTooSmall,
)
from .greedy import GreedyParams, check_greedy_output, default_params, dependency_radius, greedy_centers
from .lattice import CubeWindow, cube_gap_sq, cube_points, in_euclidean_ball, translate
from .system import ExtensionSpec, FiberWindow, OdometerSpec, SeparatedPartition, SystemPoint, act, factor, membership, separated_partition
from .tiling import (
    QuasiTilingWindow,
    TilingParams,
    check_tiling,
    dom,
    enumerate_tilings,
    first_covering_shift,
    shift_vectors,
    verify_shift_lemma,
)

__version__ = "0.1.0"
