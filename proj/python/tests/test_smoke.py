import numpy as np
import pytest

import btl


def test_cycle_spectrum():
    m = btl.model("cycle", 16)
    assert m.n == 16 and m.diameter == 8
    sd = btl.spectrum(m)
    k = np.arange(16)
    expect = np.sort(2 - 2 * np.cos(2 * np.pi * k / 16))
    assert np.allclose(sd.eigenvalues, expect, atol=1e-12)


def test_ball_and_doubling():
    m = btl.model("path", 10)
    assert m.ball_volume(0, 3) == 3
    prof = btl.doubling(m)
    assert prof.c0 >= 1


def test_frame_reconstruction():
    m = btl.model("cycle", 16)
    sd = btl.spectrum(m)
    fp = btl.frames(m, sd)
    rng = np.random.default_rng(0)
    f = rng.standard_normal(16)
    f -= f.mean()
    rec = fp.primal.synthesis(fp.dual.analysis(sd, f))
    assert np.linalg.norm(rec - f) <= 1e-9 * np.linalg.norm(f)
    lo, hi = fp.window
    assert lo <= hi and len(fp.primal) == len(fp.dual)


def test_spectral_apply_matches_numpy():
    m = btl.model("cycle", 12)
    sd = btl.spectrum(m)
    g = np.sin(np.arange(12))
    got = sd.apply(lambda u: np.exp(-u * u), g)
    w, v = np.linalg.eigh(m.L)
    assert np.allclose(got, v @ np.diag(np.exp(-w)) @ v.T @ g, atol=1e-12)


def test_symbol():
    s = btl.Symbol("lambda^2/(1+lambda^2)")
    assert s(1.0) == pytest.approx(0.5)
    assert s.derivative(1.0, 1) == pytest.approx(0.5)
    with pytest.raises(ValueError):
        btl.Symbol("x +")


def test_suites():
    names = [n for n, _, _ in btl.list_suites()]
    assert "thm4.2-reconstruction" in names
    rep = btl.run({"model": {"n": 8}, "suites": ["lemma9.1", "lemma9.2"]})
    assert not rep["hard_failure"]
    assert [r["status"] for r in rep["records"]] == ["pass", "pass"]
    assert rep["machine"] == btl.run({"model": {"n": 8}, "suites": ["lemma9.1", "lemma9.2"]})["machine"]
    with pytest.raises(btl.ConfigError):
        btl.run({"model": {"n": 8}, "bogus": 1})
