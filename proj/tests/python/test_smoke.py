import math

import pytest

import hjhom


def test_import_surface():
    for name in ("EnvParams", "Environment", "PdeSolver", "p_ck_lower"):
        assert hasattr(hjhom, name)


def test_environment_roundtrip():
    p = hjhom.EnvParams()
    p.seed = 7
    p.k_max = 2
    env = hjhom.Environment(p, hjhom.Box(-30, -30, 30, 30))
    assert env.c2_value(0.0, 0.0) in (-0.5, 0.0, 0.5)
    assert -0.5 <= env.c_value(0.0, 0.0) <= 0.5
    # same seed, same field
    env2 = hjhom.Environment(p, hjhom.Box(-30, -30, 30, 30))
    assert env.c_value(3.25, -4.5) == env2.c_value(3.25, -4.5)


def test_planted_rectangle_and_residual():
    p = hjhom.EnvParams()
    p.k_max = 1
    window = hjhom.Box(-120, -120, 120, 120)
    plants = hjhom.plant_complete_rectangle(p, window, "horizontal", 1, 0, 0)
    env = hjhom.Environment(p, window, plants)
    assert env.c_value(0.0, 0.0) == -0.5

    spec = hjhom.SuperSolutionSpec((0.0, 0.0), 1, p)
    r = hjhom.residual_plus(1.0, 0.0, 0.0, spec, env)
    bound = hjhom.case_bound(hjhom.classify_case(0.0, 0.0, spec), spec)
    assert r >= bound - 2 * p.env_grid_h


def test_small_solve():
    cfg = hjhom.SolverConfig()
    cfg.T_final = 1.0
    cfg.radius = 5.0
    cfg.allow_small_radius = True
    solver = hjhom.PdeSolver(cfg, lambda x, y: -0.5)
    run = solver.solve()
    assert hjhom.normalize_value(run, 1.0) == pytest.approx(-0.5, abs=1e-6)


def test_probability_values():
    assert hjhom.p_ck_lower(4, 0.5) == pytest.approx(0.2215804, abs=1e-6)
    assert hjhom.liminf_lower(1.0, 1.0) == pytest.approx(
        (1 - math.exp(-1)) * math.exp(-2), abs=1e-12
    )
    with pytest.raises(ValueError):
        hjhom.p_ck_lower(0, 0.5)
