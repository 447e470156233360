import itertools
import random

import pytest

from dadcert.errors import InsufficientDepth, PreconditionError, WindowTooSmall
from dadcert.greedy import (
    GreedyParams,
    check_greedy_output,
    default_params,
    dependency_radius,
    greedy_centers,
    greedy_centers_direct,
    greedy_from_labels,
    greedy_stage_sets,
    odometer_labels,
)
from dadcert.lattice import cube_gap_sq, in_euclidean_ball, translate
from dadcert.system import ExtensionSpec, OdometerSpec, SystemPoint, act, separated_partition
from dadcert.tiling import QuasiTilingWindow

from oracles import naive_greedy

FIXTURE = OdometerSpec(1, (13,))
FIXTURE_PARAMS = GreedyParams(r=1, L=3, d=1)


def test_default_params_examples():
    p = default_params(2, 1)
    assert (p.r, p.L, p.D, p.E) == (3, 9, 6, 12)
    p = default_params(1, 2)
    assert (p.r, p.L, p.D, p.E) == (2, 6, 4, 8)


@pytest.mark.parametrize("N", range(1, 8))
@pytest.mark.parametrize("d", range(1, 5))
def test_default_params_minimal_and_valid(N, d):
    p = default_params(N, d)
    assert p.r ** 2 > N * N * d >= (p.r - 1) ** 2
    assert p.D <= p.E <= 2 * p.D
    assert p.D >= 2 * p.r >= 2


def test_params_validation():
    with pytest.raises(PreconditionError):
        GreedyParams(r=2, L=5, d=1)
    with pytest.raises(PreconditionError):
        GreedyParams(r=2, L=6, d=1, N=2)
    assert GreedyParams(r=3, L=9, d=1, N=2).E == 12


def test_dependency_radius():
    assert dependency_radius(7, 3, 1) == 7
    assert dependency_radius(5, 3, 3) == 17
    assert dependency_radius(5, 3, 13, period=13) == 13
    assert dependency_radius(40, 3, 13, period=13) == 40


def test_fixture_examples_against_naive_set_builder():
    for res, expected in [((0,), [(-13,), (0,), (13,)]), ((5,), [(-18,), (-5,), (8,)])]:
        t = greedy_centers(FIXTURE, FIXTURE.point(res), FIXTURE_PARAMS, 20)
        assert list(t.centers) == expected
        assert naive_greedy(res, 13, 3, 20, 1) == expected
    assert (t.params.r, t.params.D, t.params.E) == (1, 2, 4)


def test_single_class_system():
    for d, r in [(1, 1), (2, 1)]:
        spec = OdometerSpec(d, (13,))
        params = GreedyParams(r=r, L=3, d=d)
        for x in spec.points():
            t = greedy_centers(spec, x, params, 13)
            res = x.residue(1)
            expected = [n for n in itertools.product(range(-13, 14), repeat=d)
                        if all((a + b) % 13 == 0 for a, b in zip(n, res))]
            assert list(t.centers) == expected


@pytest.mark.parametrize("m", [13, 17, 21, 25, 29, 33, 37])
def test_torus_route_matches_literal_route_and_is_periodic(m):
    L = (m - 1) // 4
    params = GreedyParams(r=L // 3, L=L, d=1)
    spec = OdometerSpec(1, (m,))
    for x in spec.points():
        direct = greedy_centers_direct(spec, x, params, 2 * m)
        assert direct.centers == greedy_centers(spec, x, params, 2 * m).centers
        cs = set(direct.centers)
        for (c,) in cs:
            if abs(c + m) <= 2 * m:
                assert (c + m,) in cs


def test_stage_monotonicity():
    for spec, params in [(OdometerSpec(1, (37,)), default_params(2, 1)),
                         (OdometerSpec(2, (25,)), default_params(1, 2))]:
        for x in itertools.islice(spec.points(), 0, None, 7):
            stages = greedy_stage_sets(spec, x, params)
            assert all(a <= b for a, b in zip(stages, stages[1:]))
            assert stages[-1] == set(greedy_centers(spec, x, params).centers)


def test_check_greedy_output_fixture():
    t = greedy_centers(FIXTURE, FIXTURE.point((0,)), FIXTURE_PARAMS, 20)
    assert check_greedy_output(t, FIXTURE_PARAMS).valid
    gaps = [b[0] - a[0] for a, b in zip(t.centers, t.centers[1:])]
    assert min(gaps) == 13 > 2 * FIXTURE_PARAMS.L
    for a, b in itertools.combinations(t.centers, 2):
        assert cube_gap_sq(a, b, FIXTURE_PARAMS.D) >= FIXTURE_PARAMS.r ** 2


def test_check_greedy_output_empty_is_invalid():
    empty = QuasiTilingWindow(FIXTURE_PARAMS.tiling, 13, (), 1)
    assert check_greedy_output(empty, FIXTURE_PARAMS).conditions() == {3, 5}


def test_check_greedy_output_flags_close_centers():
    params = GreedyParams(r=1, L=3, d=1)
    close = QuasiTilingWindow(params.tiling, 13, ((0,), (6,)), 1)
    assert 4 in check_greedy_output(close, params).conditions()


def test_greedy_errors():
    with pytest.raises(WindowTooSmall):
        greedy_centers(FIXTURE, FIXTURE.point((0,)), FIXTURE_PARAMS, 12)
    deep = OdometerSpec(1, (5, 35))
    with pytest.raises(InsufficientDepth):
        greedy_centers(deep, SystemPoint(((1,),)), FIXTURE_PARAMS)
    with pytest.raises(InsufficientDepth):
        greedy_centers(OdometerSpec(1, (5,)), SystemPoint(((1,),)), FIXTURE_PARAMS)


def test_equivariance_small_configs():
    for spec, params in [(FIXTURE, FIXTURE_PARAMS), (OdometerSpec(2, (13,)), GreedyParams(r=1, L=3, d=2))]:
        m = spec.moduli[-1]
        W = m
        for x in spec.points():
            base = greedy_centers(spec, x, params, 2 * W + 1).centers
            for v in itertools.product(range(-m, m + 1, 3), repeat=spec.d):
                moved = greedy_centers(spec, act(x, v, spec), params, W).centers
                expected = [c for c in translate(base, tuple(-a for a in v)) if max(map(abs, c)) <= W]
                assert list(moved) == expected


def test_locality_generic_route():
    """Labellings that agree on the dependency radius give the same C ∩ B_R."""
    p = separated_partition(FIXTURE, 3)
    stages = p.classes()
    R = 6
    rho = dependency_radius(R, 3, len(stages))
    for res in range(13):
        honest = odometer_labels(FIXTURE.point((res,)), p)
        scrambled = lambda n, f=honest: f(n) if max(map(abs, n)) <= rho else None
        a = greedy_from_labels(honest, stages, 3, R, 1)
        b = greedy_from_labels(scrambled, stages, 3, R, 1)
        assert [c for c in a if in_euclidean_ball(c, R)] == [c for c in b if in_euclidean_ball(c, R)]


def test_literal_route_rejects_unseparated_partition():
    with pytest.raises(PreconditionError, match="not 2L-separated"):
        greedy_from_labels(lambda n: n[0] % 2, [0, 1], 3, 5, 1)


def test_extension_points_use_base():
    ext = ExtensionSpec(FIXTURE, 2)
    rng = random.Random(1)
    x = ext.random_point(rng, (5,), 2)
    assert greedy_centers(ext, x, FIXTURE_PARAMS, 20).centers == ((-18,), (-5,), (8,))
