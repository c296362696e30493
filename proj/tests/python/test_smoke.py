import math

import pytest

import qfp


def test_reflectance_limits():
    em = qfp.EmitterParams(gamma=1.0, delta_omega=0.0)
    assert qfp.reflectance(0.0, em) == 1.0
    assert qfp.reflectance(0.25, em) == pytest.approx(0.5, abs=1e-15)
    assert qfp.phase_shift(em) == pytest.approx(-math.pi, abs=1e-15)


def test_bloch_route_matches_closed_form():
    em = qfp.EmitterParams(gamma=1.3, delta_omega=-0.7)
    for p in (1e-3, 0.1, 5.0):
        assert qfp.reflectance_from_bloch(p, em) == pytest.approx(
            qfp.reflectance(p, em), rel=1e-12
        )


def test_solve_and_transmit():
    dev = qfp.DeviceConfig(
        emitter1=qfp.EmitterParams(1.0, 0.0),
        emitter2=qfp.EmitterParams(1.0, 0.0),
        length=0.5,
    )
    sol = qfp.solve_steady_state(0.1, dev)
    assert sol.converged
    assert sol.p1 == pytest.approx(0.42654089675086693, rel=1e-8)
    assert sol.p2 == pytest.approx(0.20782033751618467, rel=1e-8)

    t, sol2 = qfp.transmit(0.1, dev, qfp.Direction.LeftToRight)
    assert sol2.converged
    assert t == pytest.approx(sol.transmittance, rel=1e-12)


def test_rectify_symmetric_is_reciprocal():
    dev = qfp.DeviceConfig(
        emitter1=qfp.EmitterParams(1.0, 0.4),
        emitter2=qfp.EmitterParams(1.0, 0.4),
        length=0.3,
    )
    res = qfp.rectify(0.05, dev)
    assert res.both_converged
    assert res.r_factor <= 1e-10


def test_rectifier_design_point():
    dev = qfp.DeviceConfig(
        emitter1=qfp.EmitterParams(1.0, -0.078125),
        emitter2=qfp.EmitterParams(1.0, 0.0),
        length=0.0121875,
    )
    res = qfp.rectify(0.001, dev)
    assert res.both_converged
    assert res.r_factor > 0.9
    assert res.l_factor > 0.9


def test_profile_nodes():
    dev = qfp.DeviceConfig(
        emitter1=qfp.EmitterParams(1.0, 0.0),
        emitter2=qfp.EmitterParams(1.0, 0.0),
        length=1.0,
    )
    prof = qfp.intracavity_profile(0.1, dev, 101)
    assert prof.converged
    peak = max(prof.intensities)
    assert prof.intensities[0] <= 0.05 * peak
    assert prof.intensities[50] <= 0.05 * peak
    assert prof.intensities[-1] <= 0.05 * peak
    assert prof.average > 0.1  # intracavity build-up beyond the input


def test_invalid_parameters_raise():
    with pytest.raises(ValueError):
        qfp.reflectance(-1.0, qfp.EmitterParams(1.0, 0.0))
    with pytest.raises(ValueError):
        qfp.reflectance(0.1, qfp.EmitterParams(-1.0, 0.0))
