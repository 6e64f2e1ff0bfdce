import math

import pytest

import vgsmile as vg


@pytest.fixture
def limit_params():
    return vg.MixtureParams(v=0.0, c=2.0, lambda_=0.5, mu=0.02, T=1.0, S0=1.0)


def test_parameter_validation():
    with pytest.raises(ValueError):
        vg.MixtureParams(v=0.0, c=2.0, lambda_=0.5, mu=1.2, T=1.0, S0=1.0)
    params = vg.MixtureParams()
    assert params.cT == pytest.approx(2.0)


def test_derived_weights(limit_params):
    cp = vg.derive(limit_params)
    assert cp.a == pytest.approx(1.0404, abs=1e-12)
    assert cp.b == pytest.approx(0.9604, abs=1e-12)
    assert cp.p == pytest.approx(0.5199920031987205, abs=1e-13)


def test_price_parity_and_quadrature(limit_params):
    quote = vg.price(1.0, limit_params)
    assert quote.call == pytest.approx(quote.put, abs=1e-12)
    assert quote.call == pytest.approx(0.039984006397, abs=1e-9)
    assert vg.price_by_quadrature(1.02, limit_params) == pytest.approx(
        vg.price(1.02, limit_params).call, abs=1e-7
    )


def test_implied_vol_round_trip():
    call = vg.bs_call(1.0, 0.2)
    assert vg.implied_vol(call, 1.0) == pytest.approx(0.2, abs=1e-9)


def test_density_limit_at_zero(limit_params):
    assert vg.double_gamma_density(0.0, limit_params) == 0.0
    assert vg.mixture_density(0.05, limit_params) > 0.0


def test_special_functions():
    assert vg.bessel_k(0.5, 1.0) == pytest.approx(
        math.sqrt(math.pi / 2.0) * math.exp(-1.0), rel=1e-12
    )
    assert vg.norm_cdf(0.0) == 0.5
    assert vg.gamma_cdf(math.log(2.0), 1.0, 1.0) == pytest.approx(0.5, abs=1e-12)


def test_classification_of_the_limit_model(limit_params):
    curve = vg.smile(limit_params, vg.log_spaced_strikes(1.0, 0.15, 101))
    report = vg.classify(curve, limit_params)
    assert report.classification == vg.SmileShape.W
    assert report.sign_sequence == "+-+-+"
    assert report.conditions.dip_at_zero
    assert report.conditions.r_star == pytest.approx(25.5)


def test_sampler_is_deterministic(limit_params):
    a = vg.sample(limit_params, 1000, 7)
    b = vg.sample(limit_params, 1000, 7)
    assert a == b
    assert len(a) == 1000
    positives = sum(1 for x in a if x > 0)
    assert 0.3 < positives / len(a) < 0.7
