"""End-to-end smoke tests for the python bindings."""

import json
import math
import os

import pytest

import shubin


def test_commutator_symbol():
    x = shubin.Symbol.from_json(json.dumps({
        "n": 1, "q": 1, "order": [1, 0],
        "components": [{"degree": [1, 0],
                        "terms": [{"coeff": [[[1, 0]]], "beta": [1], "alpha": [0],
                                   "s_exp": [0, 0]}]}],
    }))
    xi = shubin.Symbol.from_json(json.dumps({
        "n": 1, "q": 1, "order": [1, 0],
        "components": [{"degree": [1, 0],
                        "terms": [{"coeff": [[[1, 0]]], "beta": [0], "alpha": [1],
                                   "s_exp": [0, 0]}]}],
    }))
    lhs = shubin.sharp(x, xi, 4)
    rhs = shubin.sharp(xi, x, 4)
    d = lhs.component_value(2, 0.3, 0.7)[0][0] - rhs.component_value(2, 0.3, 0.7)[0][0]
    assert abs(d - 1j) < 1e-12


def test_wodzicki_residue():
    b = shubin.Symbol.from_json(json.dumps({
        "n": 1, "q": 1, "order": [-2, 0],
        "components": [{"degree": [-2, 0],
                        "terms": [{"coeff": [[[2, 0]]], "beta": [0], "alpha": [0],
                                   "s_exp": [-1, 0]}]}],
    }))
    assert abs(shubin.wodzicki_res(b) - 2.0) < 1e-9


def test_kv_tr_inverse_quartic():
    a = shubin.Symbol.shifted_quadratic_power(-2.0)
    value, unc = shubin.kv_tr(a)
    assert abs(value - 0.5) < 1e-7
    assert unc < 1e-4


def test_oracle_spectrum():
    ho = shubin.Symbol.harmonic_oscillator()
    evs = shubin.oracle_eigenvalues(ho, N=200, count=5)
    for j, ev in enumerate(evs, start=1):
        assert abs(ev - j) < 1e-9


def test_zeta_of_harmonic_oscillator():
    ho = shubin.Symbol.harmonic_oscillator()
    sample = shubin.zeta(ho, 2.0 + 0j, depth=6, grid=128)
    assert abs(sample["value"] - math.pi**2 / 6) / (math.pi**2 / 6) < 0.02


def test_sectorial_projection_is_riesz():
    a = shubin.Symbol.diag_ho([1.0, -1.0])
    pi = shubin.sectorial_projection(a, math.pi / 2, -math.pi / 2, depth=4)
    lead = pi.component_value(0, 1.0, 0.0)
    assert abs(lead[0][0] - 1.0) < 1e-7
    assert abs(lead[1][1]) < 1e-7


def test_symbol_files_load():
    data = os.environ.get("SHUBIN_DATA")
    if not data:
        pytest.skip("SHUBIN_DATA not set")
    ho = shubin.Symbol.load(os.path.join(data, "ho.json"))
    assert ho.order == 2.0 + 0j
    assert abs(ho.eval_full(0.0, 0.0)[0][0] - 0.5) < 1e-12
