import numpy as np
import pytest

from icinfb import CapacityError, SingularMatrixError
from icinfb.numerics import RngStream
from icinfb.precoder import CellSideInfo, _nulling_beams, icin_beamformer, sinr, sum_rate

from oracles import projection_beam


def _unit(v):
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


def _random_stack(seed, k, nt):
    return _unit(RngStream(31, seed).complex_gaussian((k, nt)))


# -------------------------------------------------------- icin_beamformer

def test_beam_matches_gram_schmidt_projection():
    # Independent route: project the desired direction onto the orthogonal
    # complement of the nulled directions. Both routes preserve the desired
    # direction's phase, so the vectors agree exactly, not just up to phase.
    for i in range(200):
        nt = 2 + i % 7
        k = 1 + i % nt
        rows = _random_stack(i, k, nt)
        beam = icin_beamformer(CellSideInfo(rows[0], tuple(rows[1:]))).vector
        assert np.allclose(beam, projection_beam(rows[0], rows[1:]), atol=1e-10)
        assert np.linalg.norm(beam) == pytest.approx(1.0, abs=1e-12)


def test_beam_nulls_every_fed_back_direction():
    rows = _random_stack(500, 5, 6)
    beam = icin_beamformer(CellSideInfo(rows[0], tuple(rows[1:]))).vector
    for g in rows[1:]:
        assert abs(np.vdot(g, beam)) ** 2 < 1e-20
    assert abs(np.vdot(rows[0], beam)) > 0.1  # still serves the user


def test_beam_without_nulling_constraints_is_the_direction_itself():
    d = _random_stack(501, 1, 4)[0]
    beam = icin_beamformer(CellSideInfo(d)).vector
    assert np.allclose(beam, d, atol=1e-12)


def test_fully_constrained_beam_ignores_the_desired_direction():
    # With k == nt the null space is one-dimensional: two different desired
    # directions must give the same beam up to a complex phase.
    interferers = _random_stack(502, 2, 3)
    d1, d2 = _random_stack(503, 2, 3)
    b1 = icin_beamformer(CellSideInfo(d1, tuple(interferers))).vector
    b2 = icin_beamformer(CellSideInfo(d2, tuple(interferers))).vector
    assert abs(np.vdot(b1, b2)) == pytest.approx(1.0, abs=1e-10)


def test_beam_capacity_and_singularity_errors():
    rows = _random_stack(504, 5, 4)
    with pytest.raises(CapacityError):
        icin_beamformer(CellSideInfo(rows[0], tuple(rows[1:])))
    d = _random_stack(505, 1, 4)[0]
    with pytest.raises(SingularMatrixError):
        icin_beamformer(CellSideInfo(d, (d,)))  # nulling the served direction


# ---------------------------------------------------------- _nulling_beams

def test_batched_beams_agree_with_the_single_stack_route():
    rng = RngStream(32, 0)
    stacks = _unit(rng.complex_gaussian((12, 4, 6)))
    beams = _nulling_beams(stacks)
    assert beams.shape == (12, 6)
    for i in range(12):
        single = icin_beamformer(
            CellSideInfo(stacks[i, 0], tuple(stacks[i, 1:]))).vector
        assert np.allclose(beams[i], single, atol=1e-12)


def test_batched_beams_share_the_error_contract():
    rng = RngStream(32, 1)
    with pytest.raises(CapacityError):
        _nulling_beams(_unit(rng.complex_gaussian((3, 5, 4))))
    row = _unit(rng.complex_gaussian((1, 4)))[0]
    degenerate = np.stack([np.stack([row, row]),
                           _unit(rng.complex_gaussian((2, 4)))])
    with pytest.raises(SingularMatrixError):
        _nulling_beams(degenerate)


# ----------------------------------------------------------- sinr / rate

def test_sinr_hand_computed_case():
    h = np.array([1.0, 1.0j])
    f = np.array([1.0, 0.0])
    g = np.array([1.0, 0.0])
    fl = np.array([np.sqrt(0.5), np.sqrt(0.5)])
    # signal 4*1, interference 0.5*0.5, denominator 1 + 4*0.25 = 2
    assert sinr(h, f, [g], [fl], rho=4.0, alphas=[0.5]) == pytest.approx(2.0, rel=1e-12)


def test_sinr_without_interferers_is_scaled_signal_power():
    h = np.array([3.0, 4.0j])
    f = np.array([0.0, 1.0])
    assert sinr(h, f, [], [], rho=2.0, alphas=[]) == pytest.approx(32.0, rel=1e-12)


def test_sinr_validation():
    h = np.ones(2, dtype=complex)
    with pytest.raises(ValueError):
        sinr(h, h, [h], [], rho=1.0, alphas=[0.5])
    with pytest.raises(ValueError):
        sinr(h, h, [], [], rho=-1.0, alphas=[])


def test_sum_rate_values_and_validation():
    assert sum_rate([]) == 0.0
    assert sum_rate([1.0]) == pytest.approx(1.0, rel=1e-12)
    assert sum_rate([3.0, 1.0]) == pytest.approx(3.0, rel=1e-12)
    with pytest.raises(ValueError):
        sum_rate([-0.5])
