import pytest
from hypothesis import given, settings
from numpy import allclose, array, zeros, ones, stack, einsum

from swemesh.dissipation import (spectral_radius, dissipation_hat,
                                 dissipation_ring, interface_dissipation,
                                 es_interface_flux, sign_switch, padded_hat,
                                 ring_switches)
from swemesh.state import PhysicsParams, energy_variables

from .strategies import stencils, metrics


def lake_stencil(level=2.0):
    b = array([0.1, 0.5, 0.9, 0.3, 0.0, 0.7])
    return stack([level - b, zeros(6), zeros(6), b])


def test_spectral_radius_of_resting_water():
    params = PhysicsParams(g=4.0)
    U = array([1.0, 0.0, 0.0, 0.0])
    assert spectral_radius(U, array([0.0, 1.0, 0.0]), params) == 2.0
    assert spectral_radius(U, array([0.5, 0.0, 2.0]), params) == 4.5
    assert spectral_radius(U, array([-3.0, 1.0, 0.0]), params) == 5.0


def test_sign_switch():
    assert allclose(sign_switch(array([1.0, -1.0, 0.0, 2.0]),
                                array([2.0, 1.0, -3.0, 0.0])),
                    [1.0, 0.0, 1.0, 1.0])


def test_no_dissipation_for_lake_at_rest(params):
    stencil = lake_stencil()
    metric = array([0.7, 1.0, 0.5])
    result = interface_dissipation(stencil, metric, params)
    assert allclose(result.d_hat, 0.0)
    # mass and topography terms cancel in the surface level
    assert result.d_ring[0] + result.d_ring[3] == pytest.approx(0.0)
    assert allclose(result.d_ring[1:3], 0.0)


def test_no_dissipation_for_constant_state(params):
    stencil = einsum('a,r->ar', array([1.5, 0.3, -0.2, 0.4]), ones(6))
    result = interface_dissipation(stencil, array([0.4, 1.0, -1.0]), params)
    assert allclose(result.total, 0.0)


def test_ring_term_vanishes_on_static_mesh(params):
    stencil = lake_stencil() + array([[0.0], [0.1], [0.0], [0.0]])
    d_ring, gate = dissipation_ring(stencil, array(0.0), params)
    assert allclose(d_ring, 0.0)
    assert (gate[0] == gate[3]).all()


def test_ring_term_can_be_dropped(params):
    stencil = lake_stencil() + array([[0.0], [0.1], [0.0], [0.0]])
    result = interface_dissipation(stencil, array([0.5, 1.0, 0.0]), params,
                                   ring=False)
    assert allclose(result.d_ring, 0.0)
    assert not result.ring_active


@pytest.mark.parametrize('h_agrees, b_agrees, expected', [(True, True, 1.0),
                                                      (True, False, 0.0),
                                                      (False, True, 0.0),
                                                      (False, False, 0.0)])
def test_depth_and_topography_switch_together(h_agrees, b_agrees, expected):
    raw = array([2.0, -1.0, 3.0, -0.5])
    reconstructed = array([1.0 if h_agrees else -1.0, 0.5, -2.0,
                           -0.2 if b_agrees else 0.2])
    gate = ring_switches(reconstructed, raw)
    assert gate[0] == gate[3] == expected
    assert gate[1] == 0.0
    assert gate[2] == 0.0


@settings(max_examples=500, deadline=None)
@given(stencils(), metrics())
def test_ring_term_dissipates_on_its_own(stencil, metric):
    params = PhysicsParams(g=9.81)
    d_ring, gate = dissipation_ring(stencil, metric[0], params)
    V = energy_variables(stencil[:, 2:4], params)
    terms = (V[:, 1] - V[:, 0]) * d_ring
    assert (terms >= 0.0).all()
    assert gate[0] == gate[3]


@settings(max_examples=100, deadline=None)
@given(stencils(), metrics())
def test_dissipated_energy_is_not_negative(stencil, metric):
    params = PhysicsParams(g=9.81)
    result = interface_dissipation(stencil, metric, params)
    V = energy_variables(stencil[:, 2:4], params)
    produced = einsum('a,a->', V[:, 1] - V[:, 0], result.total)
    assert produced >= -1e-9 * (1.0 + abs(V).max() * abs(result.total).max())


@settings(max_examples=50, deadline=None)
@given(stencils(), metrics())
def test_hat_term_has_three_components(stencil, metric):
    params = PhysicsParams(g=9.81)
    d_hat, gate = dissipation_hat(stencil, metric, params)
    assert d_hat.shape == (3,)
    assert set(gate.tolist()) <= {0.0, 1.0}
    assert padded_hat(d_hat)[3] == 0.0


def test_energy_stable_flux():
    ec = array([1.0, 2.0, 3.0, 0.0])
    d_hat = array([0.5, 0.5, 0.5])
    d_ring = array([0.1, 0.0, 0.0, -0.1])
    assert allclose(es_interface_flux(ec, d_hat, d_ring),
                    [0.4, 1.5, 2.5, 0.1])
