import numpy as np
import pytest

from graphtwistor.calculus import OneForm, differential, is_isotropic
from graphtwistor.generators import cube, cycle, dodecahedron, path
from graphtwistor.graph import automorphisms
from graphtwistor.holomorphy import is_holomorphic
from graphtwistor.solver import (NONE_FOUND, SolveConfig, affine_distance, gauge_vertices,
                                 nondegeneracy_defect, restart_rng, scale_distance,
                                 solve_holomorphic, solve_isotropic)


def test_config_validation():
    with pytest.raises(ValueError):
        SolveConfig(target=0)
    with pytest.raises(ValueError):
        SolveConfig(restarts=0)
    with pytest.raises(ValueError):
        SolveConfig(seed=-1)
    with pytest.raises(ValueError, match="unknown"):
        SolveConfig.from_dict({"bogus": 1})
    cfg = SolveConfig(seed=5, restarts=3)
    assert SolveConfig.from_dict(cfg.to_dict()) == cfg


def test_restart_streams_are_keyed():
    a = restart_rng(1, 2).uniform(size=4)
    assert np.array_equal(a, restart_rng(1, 2).uniform(size=4))
    assert not np.array_equal(a, restart_rng(1, 3).uniform(size=4))
    assert not np.array_equal(a, restart_rng(2, 2).uniform(size=4))


def test_gauge_vertices_adjacent():
    g = cube().graph
    x0, x1 = gauge_vertices(g)
    assert g.has_edge(x0, x1)


def test_cycle4_solution():
    g = cycle(4)
    rep = solve_holomorphic(g, SolveConfig(restarts=20))
    assert rep.found
    ref = np.array([0, 1, 1 + 1j, 1j])
    dists = []
    for s in rep.solutions:
        assert is_holomorphic(s.value, 1e-9)
        for a in automorphisms(g):
            arr = np.array([s.value[a[x]] for x in g.vertices])
            dists.append(affine_distance(arr, ref))
    assert min(dists) < 1e-6


def test_cube_solutions_verified():
    rep = solve_holomorphic(cube().graph, SolveConfig(restarts=10))
    assert rep.found
    for s in rep.solutions:
        assert s.residual < 1e-9
        assert is_holomorphic(s.value, 1e-9)
        x0, x1 = gauge_vertices(s.value.graph)
        assert s.value[x0] == 0 and s.value[x1] == 1


def test_determinism():
    g = cube().graph
    a = solve_holomorphic(g, SolveConfig(seed=9, restarts=8))
    b = solve_holomorphic(g, SolveConfig(seed=9, restarts=8))
    assert a.statuses == b.statuses and a.classes == b.classes
    for s, t in zip(a.solutions, b.solutions):
        assert np.array_equal(s.value.to_array(), t.value.to_array())


def test_threads_merge_in_restart_order():
    g = cube().graph
    a = solve_holomorphic(g, SolveConfig(seed=4, restarts=12))
    b = solve_holomorphic(g, SolveConfig(seed=4, restarts=12, workers=4))
    assert a.statuses == b.statuses and a.classes == b.classes
    for s, t in zip(a.solutions, b.solutions):
        assert np.array_equal(s.value.to_array(), t.value.to_array())


def test_dedup_classes_cover_converged_restarts():
    rep = solve_holomorphic(cycle(4), SolveConfig(restarts=15))
    members = sorted(i for c in rep.classes for i in c)
    assert members == [i for i, s in enumerate(rep.statuses) if s == "converged"]
    for i, s in enumerate(rep.solutions):
        for t in rep.solutions[i + 1:]:
            assert affine_distance(s.value.to_array(), t.value.to_array()) >= 1e-6


def test_path_has_no_holomorphic_function():
    # an end vertex forces its neighbour to share its value, then the next, ...
    rep = solve_holomorphic(path(3), SolveConfig(restarts=5))
    assert not rep.found and rep.message == NONE_FOUND


def test_dodecahedron_isotropic_small_budget():
    g = dodecahedron()
    rep = solve_isotropic(g, SolveConfig(restarts=3))
    assert rep.found
    for s in rep.solutions:
        assert is_isotropic(s.value, 1e-9)
        assert nondegeneracy_defect(s.value) < 1e-6 * g.m


def test_builtin_cube_differential_is_feasible_for_isotropic():
    d = cube()
    w = differential(d.values)
    from graphtwistor.calculus import isotropy_residuals
    assert isotropy_residuals(w).max_abs() < 1e-12


def test_zero_form_rejected_by_nondegeneracy():
    g = cube().graph
    zero = OneForm(g, {e: 0j for e in g.edges})
    assert is_isotropic(zero)
    assert nondegeneracy_defect(zero) == g.m
    rep = solve_isotropic(g, SolveConfig(restarts=4))
    assert rep.found
    assert all(nondegeneracy_defect(s.value) < 1e-6 * g.m for s in rep.solutions)


def test_scale_distance():
    a = np.array([1, 1j, -1])
    assert scale_distance(a, (2 - 3j) * a) < 1e-15
    assert scale_distance(a, np.array([1, 0, 0])) > 0.1


def test_isotropic_needs_edges():
    from graphtwistor.graph import build_graph
    with pytest.raises(ValueError):
        solve_isotropic(build_graph(["a"], []))
