import math
import os
from pathlib import Path

import numpy as np
import pytest

import gibbs

CONFIG_DIR = Path(os.environ.get("GIBBS_CONFIG_DIR", Path(__file__).resolve().parents[2] / "configs"))


def test_expr_roundtrip_and_derivative():
    e = gibbs.Expr("sin(x)^2 + log(2)")
    assert e(0.5) == pytest.approx(math.sin(0.5) ** 2 + math.log(2), abs=1e-15)
    assert e.derivative()(0.5) == pytest.approx(math.sin(1.0), abs=1e-14)
    assert gibbs.Expr(str(e)) == e
    assert gibbs.Expr("pi/2").is_constant


def test_parse_and_domain_errors():
    with pytest.raises(gibbs.ParseError):
        gibbs.Expr("1 +")
    with pytest.raises(gibbs.DomainError):
        gibbs.Expr("log(x)")(-1.0)
    with pytest.raises(gibbs.ConfigError):
        gibbs.cantor(1.5)
    assert issubclass(gibbs.NumericalError, gibbs.GibbsError)


def test_cheb_grid():
    g = gibbs.ChebGrid(8)
    nodes = g.nodes
    assert nodes.shape == (8,)
    expected = np.cos((2 * np.arange(8) + 1) * np.pi / 16)
    assert np.allclose(np.sort(nodes), np.sort(expected), atol=1e-15)
    assert g.interpolate(nodes ** 3, 0.3) == pytest.approx(0.027, abs=1e-14)


def test_cantor_pressure_and_measure():
    data = gibbs.solve(gibbs.cantor(1 / 3), 64)
    assert abs(data.pressure) <= 1e-13
    assert np.max(np.abs(data.h - 1.0)) <= 1e-12
    assert data.mu.sum() == pytest.approx(1.0, abs=1e-14)
    assert data.nu @ data.h == pytest.approx(1.0, abs=1e-13)
    assert gibbs.integrate(data, "x") == pytest.approx(0.0, abs=1e-14)
    assert gibbs.integrate(data, lambda x: 1.0) == pytest.approx(1.0, abs=1e-14)
    assert max(data.residuals) < 1e-12


def test_second_moment_matches_self_similarity():
    # r = 1/3: E[x^2] = (1 - r)^2 / (1 - r^2) for the symmetric two-map measure
    r = 1 / 3
    data = gibbs.solve(gibbs.cantor(1 / 3), 64)
    assert gibbs.integrate(data, "x^2") == pytest.approx((1 - r) ** 2 / (1 - r * r), abs=1e-13)


def test_transfer_matrix_shape_and_row_sums():
    L = gibbs.transfer_matrix(gibbs.cantor(0.5), 16)
    assert L.shape == (16, 16)
    assert np.allclose(L.sum(axis=1), 1.0, atol=1e-13)


def test_fourier_direct_vs_oracle():
    data = gibbs.solve(gibbs.cantor(1 / 3), 200)
    xi = np.linspace(0.0, 100.0, 11)
    direct = gibbs.fourier_direct(data, xi)
    oracle = gibbs.cantor_oracle(1 / 3, xi)
    assert direct.dtype == np.complex128
    assert direct[0] == 1.0
    assert np.max(np.abs(direct - oracle)) <= 1e-12


def test_gauss_sampler_agrees_with_spectral():
    system = gibbs.gauss([2, 3])
    data = gibbs.solve(system, 48)
    exact = gibbs.integrate(data, "x")
    run = gibbs.sample(system, data, "x", T=20000, T0=1000, replicas=4, seed=3)
    assert run["replicas"] == 4
    assert run["replica_values"].shape == (4,)
    assert abs(run["estimate"] - exact) <= 6 * run["std_error"]
    again = gibbs.sample(system, data, "x", T=20000, T0=1000, replicas=4, seed=3)
    assert again["estimate"] == run["estimate"]


def test_sample_orbit_stays_in_cantor_set():
    system = gibbs.cantor(1 / 3)
    data = gibbs.solve(system, 16)
    orbit = gibbs.sample_orbit(system, data, 1000)
    assert orbit.shape == (1000,)
    assert np.all(np.abs(orbit) >= 1 / 3 - 1e-12)


def test_ulam_is_cruder_than_direct():
    system = gibbs.cantor(1 / 3)
    op = gibbs.ulam(system, M=200)
    assert op.weights.sum() == pytest.approx(1.0, abs=1e-12)
    assert op.fourier(0.0) == 1.0
    err = abs(op.fourier(50.0) - gibbs.cantor_oracle(1 / 3, [50.0])[0])
    assert err > 1e-6


def test_config_files_and_diagnose():
    cfg = gibbs.load_config(str(CONFIG_DIR / "gauss_2_6.json"))
    assert cfg.N == 128
    assert len(cfg.system) == 5
    report = gibbs.diagnose(cfg.system)
    assert report["certified"]
    assert 0 < report["c_est"] < 1
    cantor = gibbs.parse_config('{"preset": {"name": "cantor", "alpha": "1/3"}}')
    assert cantor.cantor_ratio == pytest.approx(1 / 3)
    with pytest.raises(gibbs.ConfigError):
        gibbs.parse_config("{}")


def test_custom_system_and_json_roundtrip():
    system = gibbs.IFSSystem("halves", [("x/2 - 1/2", "log(1/2)", "a"), ("x/2 + 1/2", "log(1/2)", "b")])
    assert system.labels == ["a", "b"]
    data = gibbs.solve(system, 32)
    assert abs(data.pressure) <= 1e-13
    assert gibbs.integrate(data, "x^2") == pytest.approx(1 / 3, abs=1e-13)
    back = gibbs.SpectralData.from_json(data.to_json())
    assert np.array_equal(back.mu, data.mu)
    assert back.N == 32
