import numpy as np
import pytest

from graphtwistor.calculus import (CycleConditionError, OneForm, VertexFunction, coderivative,
                                   cycle_sums, differential, integrate, is_isotropic,
                                   isotropy_residuals, laplacian, laplacian_matrix)
from graphtwistor.gaussian import GaussianRational as Q
from graphtwistor.generators import SQRT2, complete, cube, cycle, figure1, path
from graphtwistor.graph import build_graph, cycle_basis


def test_differential_constant_is_zero():
    g = cube().graph
    w = differential(VertexFunction.constant(g, Q(3, -1)))
    assert all(v == 0 for _, v in w.items())


def test_differential_figure1_edge():
    d = figure1()
    w = differential(d.values)
    # f is valued 0, e is valued i
    assert w("f", "e") == Q(0, 1)
    assert w("e", "f") == -w("f", "e")


def test_antisymmetry_of_form():
    g = cycle(4)
    w = OneForm(g, {("v1", "v0"): 2 + 1j, ("v1", "v2"): 1, ("v2", "v3"): 0, ("v0", "v3"): 1j})
    for x, y in g.directed_edges():
        assert w(x, y) == -w(y, x)
    assert w("v0", "v1") == -(2 + 1j)


def test_from_directed_checks_antisymmetry():
    g = path(2)
    OneForm.from_directed(g, {("v0", "v1"): 1, ("v1", "v0"): -1})
    with pytest.raises(ValueError, match="antisymmetric"):
        OneForm.from_directed(g, {("v0", "v1"): 1, ("v1", "v0"): 1})


def test_form_errors():
    g = path(3)
    with pytest.raises(ValueError, match="non-edge"):
        OneForm(g, {("v0", "v2"): 1, ("v0", "v1"): 1, ("v1", "v2"): 1})
    with pytest.raises(ValueError, match="undefined"):
        OneForm(g, {("v0", "v1"): 1})


def test_coderivative_examples():
    g = path(2)
    z = coderivative(OneForm(g, {("v0", "v1"): 0}))
    assert z.all_zero()
    c = coderivative(OneForm(g, {("v0", "v1"): 1}))
    assert c["v0"] == -1 and c["v1"] == 1


def test_codiff_of_differential_is_laplacian_on_cube():
    phi = cube().values
    a = coderivative(differential(phi)).to_array()
    b = laplacian(phi).to_array()
    assert np.allclose(a, b, atol=1e-15)


def test_laplacian_examples():
    assert laplacian(VertexFunction.constant(cube().graph, 5)).all_zero()
    d = figure1()
    lap = laplacian(d.values)
    assert lap["f"] == Q(-1, -1) / 2 and lap.exact
    phi = cube().values
    # the vertex valued -1, outward triple (1, sqrt2 i, 1)
    assert abs(laplacian(phi)["100"] - (-SQRT2 / 3 * (SQRT2 + 1j))) < 1e-15


def test_isolated_vertex_rejected():
    g = build_graph(["a", "b", "c"], [("a", "b")])
    with pytest.raises(ValueError, match="isolated"):
        laplacian(VertexFunction.constant(g, 0))
    with pytest.raises(ValueError, match="isolated"):
        coderivative(OneForm(g, {("a", "b"): 1}))


def test_isotropy_examples():
    assert isotropy_residuals(differential(cube().values)).max_abs() < 1e-12
    r = isotropy_residuals(differential(figure1().values))
    assert r.exact and all(v == 0 for v in r.values.values())
    r = isotropy_residuals(OneForm(path(2), {("v0", "v1"): 1}))
    assert r["v0"] == 1 and r["v1"] == 1
    assert not is_isotropic(OneForm(path(2), {("v0", "v1"): 1}))


def test_integrate_round_trip_exact():
    phi = figure1().values
    back = integrate(differential(phi), "a", phi["a"])
    assert back.values == phi.values


def test_integrate_cycle_violation():
    g = complete(3)
    w = OneForm(g, {("v0", "v1"): 1, ("v1", "v2"): 1, ("v0", "v2"): -1})
    with pytest.raises(CycleConditionError) as info:
        integrate(w, "v0")
    assert info.value.total in (3, -3)
    assert len(info.value.cycle) == 3


def test_integrate_float_tolerance():
    g = cycle(4)
    phi = VertexFunction(g, {"v0": 0, "v1": 1.0, "v2": 1 + 1j, "v3": 1j})
    w = differential(phi)
    vals = dict(w.values)
    vals[("v0", "v3")] += 1e-12
    integrate(OneForm(g, vals))
    vals[("v0", "v3")] += 1e-6
    with pytest.raises(CycleConditionError):
        integrate(OneForm(g, vals))


def test_integrate_independent_of_root():
    phi = cube().values
    w = differential(phi)
    a = integrate(w, "000", 0).to_array()
    b = integrate(w, "111", phi["111"] - phi["000"]).to_array()
    assert np.allclose(a, b, atol=1e-14)


def test_integrate_per_component():
    g = build_graph(list("abcd"), [("a", "b"), ("c", "d")])
    w = OneForm(g, {("a", "b"): 1, ("c", "d"): 2})
    phi = integrate(w, basepoints={"a": 0, "d": 10})
    assert phi["b"] == 1 and phi["c"] == 8
    with pytest.raises(ValueError, match="no basepoint"):
        integrate(w, basepoints={"a": 0})


def test_cycle_sums_vanish_for_exact_forms():
    g = cube().graph
    sums = cycle_sums(differential(cube().values), cycle_basis(g))
    assert max(abs(s) for s in sums) < 1e-15


def test_laplacian_spectrum():
    for g in (cube().graph, figure1().graph, cycle(7), complete(5)):
        ev = np.linalg.eigvals(laplacian_matrix(g))
        assert np.all(ev.real > -1e-12) and np.all(ev.real < 2 + 1e-12)
        assert np.min(np.abs(ev)) < 1e-12
