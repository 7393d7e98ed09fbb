"""Smoke tests for the coronalab extension module."""

import json
import math

import coronalab as cl


def test_poly_eval_and_derivative():
    assert cl.eval_poly([2, 0, 1], 1 + 1j) == (2 + 2j)
    assert cl.derivative([2, 0, 1]) == [0, 2]
    zeros = cl.find_zeros([-0.25, 0, 1], radius=1.0)
    assert len(zeros) == 2
    assert max(abs(z - w) for z, w in zip(sorted(zeros, key=lambda z: z.real), [-0.5, 0.5])) < 1e-12


def test_phi_gauge():
    assert cl.phi_eval("exponential", 0.5) == 0.5**4
    assert cl.phi_eval("exponential", 0.0) == 0.0
    assert abs(cl.psi_eval("normalized-power", 1.0, epsilon=1.0) - 0.25) < 1e-15


def test_disc_quadrature_mass():
    nodes, weights = cl.disc_quadrature(64, 128)
    assert abs(sum(weights) - 1.0) <= 1e-10
    assert all(0 < abs(z) < 1 for z in nodes[:100])


def test_green_residual():
    res = cl.green_residual(lambda z: abs(z) ** 2, lambda z: 1.0, 64, 128, 128)
    assert res <= 1e-10


def test_validate_trivial_scenario():
    rep = cl.validate_scenario([[1.0]], [0.0], "exponential", 64)
    assert rep["pass"]
    assert rep["delta"] == 1.0


def test_sample_fields_projection():
    s = cl.sample_fields([[0, 1], [1]], [0], 0.25 + 0.1j)
    pi = s["pi"]
    assert abs((pi @ pi - pi)).max() <= 1e-12


def test_minimal_norm_solve():
    G, residual, norm = cl.minimal_norm_solve([[0, 1], [1, -1]], [1], [1], 8)
    assert residual <= 1e-10
    assert norm <= math.sqrt(2.0)
    assert len(G) == 2


def test_leech_and_pick():
    min_eig, ok = cl.leech_psd_check([[0, 1], [1, -1]], [1], 2.0, 16)
    assert ok and min_eig > 0.5
    min_eig, ok = cl.leech_psd_check([[0, 1], [1, -1]], [1], 0.1, 16)
    assert not ok
    pool = cl.pick_node_pool()
    assert len(pool) == 32
    _, ok = cl.pick_matrix_check([[0, 1], [1, -1]], [1], 2.0, pool)
    assert ok


def test_run_scenario_json_roundtrip():
    configs = cl.corpus_json()
    assert len(configs) >= 10
    cfg = json.loads(configs[1])
    assert cfg["name"] == "trivial-n1-const"
    code, report, summary = cl.run_scenario_json(configs[1], "validate")
    assert code == 0
    rep = json.loads(report)
    assert rep["schema"] == 1
    assert rep["hypothesis"]["pass"]
    assert "validate" in summary


def test_total_bound_constant():
    e = math.e
    expected = 1 + e * math.sqrt(4 * e + 2) + 2 * math.sqrt(2) * e + math.sqrt(2 * e)
    assert abs(cl.total_bound_constant() - expected) < 1e-12
