import math

import numpy as np
import pytest

import zenoscope as zs


def test_kernel_and_decay():
    k = zs.MemoryKernel(zs.SpectralDensity.lorentzian(1.0, 5.0))
    assert k.value(np.array([0.0]))[0] == pytest.approx(-2.5j)
    t, a = zs.solve_decay(k, 2.0)
    exact = np.array([zs.analytic_lorentzian_a(x, 1.0, 5.0) for x in t])
    assert np.max(np.abs(a - exact)) < 1e-4
    assert t[0] == 0.0 and t[-1] == pytest.approx(2.0) and a[0] == 1.0
    assert abs(a[-1]) < 1.0


def test_scaled_kernel_is_width_independent():
    x = np.linspace(0.0, 20.0, 101)
    g5 = zs.MemoryKernel(zs.SpectralDensity.gaussian(1.0, 5.0)).scaled(x)
    g100 = zs.MemoryKernel(zs.SpectralDensity.gaussian(1.0, 100.0)).scaled(x)
    assert np.max(np.abs(g5 - g100)) < 1e-12


def test_rates():
    d = zs.SpectralDensity.lorentzian(1.0, 10.0)
    k = zs.MemoryKernel(d)
    assert zs.gamma_closed_form(d, 1.0).real == pytest.approx(math.exp(-1.0))
    assert abs(zs.gamma_numeric(k, 1.0) - zs.kk_rate(k, 1.0)) < 1e-10
    assert zs.gamma_closed_form(zs.SpectralDensity.gaussian(1.0, 1.0, 0.2), 1.0) is None
    curve = zs.rate_curve(k, [0.5, 1.0, 2.0], zs.RateSource.CLOSED_FORM)
    assert curve.shape == (3,)


def test_null_conditioned_decay():
    k = zs.MemoryKernel(zs.SpectralDensity.rectangular(1.0, 100.0))
    t, p, a_tau = zs.null_conditioned_decay(k, 0.02, 2.0)
    assert p[0] == 1.0
    assert np.allclose(p[1:], np.abs(a_tau) ** (2 * np.arange(1, len(p))))


def test_trajectories_are_seeded():
    nf = zs.scaling_null_factor(0.5, 0.05)
    drive = zs.DriveConfig(omega=1.0, gamma_eff=nf.gamma_eff, dt=0.05, n_steps=200)
    a = zs.simulate_trajectory(zs.AtomState(), drive, nf.a_bar, 3)
    b = zs.simulate_trajectory(zs.AtomState(), drive, nf.a_bar, 3)
    assert all(np.array_equal(x, y) for x, y in zip(a, b))
    ens = zs.ensemble_average(zs.AtomState(), drive, nf.a_bar, 2000, 1, threads=2)
    t, p = zs.solve_master(zs.AtomState(), 1.0, nf.gamma_eff, 10.0, 0.05)
    assert np.max(np.abs(ens["p_e_mean"] - p)) < 0.05


def test_errors_become_value_errors():
    with pytest.raises(zs.StepSizeError):
        zs.solve_decay(zs.MemoryKernel(zs.SpectralDensity.lorentzian(1.0, 100.0)), 1.0, dt=0.1)
    with pytest.raises(ValueError):
        zs.SpectralDensity.lorentzian(1.0, -1.0)(np.array([0.0]))
    with pytest.raises(zs.ConfigError, match="line 2"):
        zs.parse_config("experiment = decay\nlamda = 3\n")


def test_config_round_trip_and_run(tmp_path):
    c = zs.parse_config("experiment = decay\nlambda = 5\nt_max = 1\n")
    c.set("out", str(tmp_path / "decay.csv"))
    assert str(zs.parse_config(zs.dump_config(c))) == str(c)
    r = zs.run_experiment(c)
    assert r["passed"] and (tmp_path / "decay.csv").exists()


def test_verify_suite():
    res = zs.verify("appendix-a")
    assert [c["id"] for c in res] == ["AC4b"] and res[0]["passed"]
