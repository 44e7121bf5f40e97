# SPDX-License-Identifier: Apache-2.0
import numpy as np
import pytest

import cslacc


def test_combined_gain_value():
    assert cslacc.gain_mcslsacc(2, 3, 6, 0.6) == pytest.approx(3.552, abs=1e-9)
    assert cslacc.gain_mcslacc(2, 3, 2, 0.6) == pytest.approx(0.72, abs=1e-12)


def test_bounds_contain_largest_singular_value():
    lower, upper = cslacc.bounds_vcslacc_r0(1, 3, 0.5)
    sigma = np.linalg.svd(cslacc.correlation_block(1, 3, 0, 0.5, 3), compute_uv=False)[0]
    assert lower <= sigma <= upper


def test_hermitian_sqrt_squares_back():
    q = cslacc.exponential_correlation(4, 0.6 * np.exp(0.3j))
    root = cslacc.hermitian_sqrt(q)
    assert np.allclose(root @ root, q, atol=1e-10)


def test_somp_noiseless_support():
    rng = np.random.default_rng(3)
    a = rng.standard_normal((12, 30)) + 1j * rng.standard_normal((12, 30))
    z = np.zeros((30, 2), dtype=complex)
    z[[4, 17]] = rng.standard_normal((2, 2))
    _, bins, bands = cslacc.somp(a @ z, a, max_sparsity=2, band_count=10)
    assert sorted(bins) == [4, 17]
    assert bands == [1, 5]


def test_errors_carry_code():
    with pytest.raises(cslacc.Error) as info:
        cslacc.gain_mcslsacc(3, 2, 6, 0.5)
    assert info.value.code == "IndexOutOfRange"


def test_small_montecarlo_is_deterministic():
    overrides = [
        "scenario.nyquist_samples=100",
        "scenario.sub_samples=20",
        "scenario.bandwidth_hz=200e6",
        "scenario.segments=20",
        "scenario.snr_db=0",
        "recovery.calibration_trials=4",
        "plan.algorithms=mcslsacc,tsacsl",
    ]
    a = cslacc.montecarlo("custom", trials=4, seed=5, overrides=overrides)
    b = cslacc.montecarlo("custom", trials=4, seed=5, workers=2, overrides=overrides)
    assert a[0]["algorithm"] == "mcslsacc"
    assert [(r["pd"], r["pf"]) for r in a] == [(r["pd"], r["pf"]) for r in b]


def test_theory_csv_header():
    text = cslacc.theory_csv("rho")
    assert text.splitlines()[0].startswith("kind,M,i,j,r,")
