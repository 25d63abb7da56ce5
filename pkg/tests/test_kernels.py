"""The numba kernels and their numpy fallbacks must agree numerically."""

import numpy as np
import pytest

from matagent import kernels
from matagent.kernels import (
    _gaussian_profile_np,
    _lj_energy_forces_np,
    _min_pair_distance_np,
    _structure_factor_sq_np,
)


@pytest.fixture
def rng():
    return np.random.default_rng(123)


def test_structure_factor_paths_agree(rng):
    hkl = rng.integers(-5, 6, size=(40, 3)).astype(np.float64)
    frac = rng.uniform(0, 1, size=(12, 3))
    f = rng.uniform(1, 90, size=12)
    fast = kernels.structure_factor_sq_batch(hkl, frac, f)
    ref = _structure_factor_sq_np(hkl, frac, f)
    assert np.allclose(fast, ref, rtol=1e-10, atol=1e-8)


def test_gaussian_profile_paths_agree(rng):
    centers = rng.uniform(10, 90, size=50)
    weights = rng.uniform(0, 1e4, size=50)
    fast = kernels.gaussian_profile(centers, weights, 10.0, 0.02, 4001, 0.05)
    ref = _gaussian_profile_np(centers, weights, 10.0, 0.02, 4001, 0.05)
    assert np.allclose(fast, ref, rtol=1e-12, atol=1e-9)


def test_min_pair_distance_paths_agree(rng):
    lattice = np.eye(3) * 8.0 + rng.uniform(-0.5, 0.5, size=(3, 3))
    frac = rng.uniform(0, 1, size=(20, 3))
    cart = frac @ lattice
    fast = kernels.min_pair_distance(cart, lattice)
    ref = _min_pair_distance_np(cart, lattice)
    assert fast == pytest.approx(ref, rel=1e-12)


def test_min_pair_distance_single_site_uses_images():
    lattice = np.eye(3) * 3.0
    cart = np.zeros((1, 3))
    assert kernels.min_pair_distance(cart, lattice) == pytest.approx(3.0)


def test_lj_paths_agree(rng):
    lattice = np.eye(3) * 10.0
    frac = rng.uniform(0.05, 0.95, size=(8, 3)) * 0.9
    sigma = np.full((8, 8), 2.0)
    e_fast, f_fast = kernels.lj_energy_forces(frac, lattice, sigma)
    e_ref, f_ref = _lj_energy_forces_np(frac, lattice, sigma, 1.0)
    assert e_fast == pytest.approx(e_ref, rel=1e-9)
    assert np.allclose(f_fast, f_ref, rtol=1e-9, atol=1e-9)


def test_lj_forces_are_translation_invariant(rng):
    lattice = np.eye(3) * 12.0
    frac = rng.uniform(0.2, 0.8, size=(5, 3))
    sigma = np.full((5, 5), 2.5)
    _, forces = kernels.lj_energy_forces(frac, lattice, sigma)
    # momentum conservation: pair forces cancel in the sum
    assert np.allclose(forces.sum(axis=0), 0.0, atol=1e-9)


def test_lj_two_body_force_matches_finite_difference():
    lattice = np.eye(3) * 20.0
    sigma = np.full((2, 2), 2.0)
    base = np.array([[0.4, 0.5, 0.5], [0.6, 0.5, 0.5]])
    h = 1e-6
    e_plus, _ = kernels.lj_energy_forces(base + [[h / 20.0, 0, 0], [0, 0, 0]], lattice, sigma)
    e_minus, _ = kernels.lj_energy_forces(base - [[h / 20.0, 0, 0], [0, 0, 0]], lattice, sigma)
    numeric = -(e_plus - e_minus) / (2 * h)  # dE/dx of atom 0, cartesian
    _, forces = kernels.lj_energy_forces(base, lattice, sigma)
    assert forces[0, 0] == pytest.approx(numeric, rel=1e-5)
