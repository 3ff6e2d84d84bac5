"""Fock-space lifting: permanents, transition amplitudes, evolution,
and the symbolic-expansion oracle.

The permanent gets an independent reference here — the literal
permutation-sum definition — so the inclusion-exclusion implementation
is never compared against itself.
"""

from itertools import permutations

import numpy as np
import pytest

from fockgate import (
    ModeRegistry,
    basis_state,
    beam_splitter_matrix,
    evolve,
    haar_random_unitary,
    oracle_evolve,
    permanent,
    transition_amplitude,
    vacuum,
)

rng = np.random.default_rng(424242)

TWO = ModeRegistry(("a", "b"))

R_VALUES = (0.0, 0.25, 1.0 / 3.0, 0.5, 2.0 / 3.0, 1.0)


def naive_permanent(matrix):
    """Sum over permutations, straight from the definition."""
    n = matrix.shape[0]
    return sum(
        np.prod([matrix[i, sigma[i]] for i in range(n)])
        for sigma in permutations(range(n))
    )


def random_occupations(registry, photons):
    occ = [0] * registry.count
    for _ in range(photons):
        occ[rng.integers(registry.count)] += 1
    return tuple(occ)


# ----------------------------------------------------------------- permanent


def test_permanent_definition_cases():
    a, b, c, d = rng.standard_normal(4)
    assert permanent(np.array([[a]])) == pytest.approx(a)
    assert permanent(np.array([[a, b], [c, d]])) == pytest.approx(a * d + b * c)
    assert permanent(np.ones((3, 3))) == pytest.approx(6.0)
    assert permanent(np.zeros((0, 0))) == pytest.approx(1.0)


def test_permanent_matches_naive_up_to_six():
    for n in range(1, 7):
        for _ in range(6):
            matrix = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            assert permanent(matrix) == pytest.approx(
                naive_permanent(matrix), abs=1e-10
            )


def test_permanent_rejects_bad_shapes():
    with pytest.raises(ValueError):
        permanent(np.ones((2, 3)))
    with pytest.raises(ValueError):
        permanent(np.ones((13, 13)))


# ------------------------------------------------------- transition amplitude


@pytest.mark.parametrize("r", R_VALUES)
def test_two_photon_coincidence_amplitude(r):
    bs = beam_splitter_matrix(r)
    assert transition_amplitude(bs, (1, 1), (1, 1)) == pytest.approx(
        2 * r - 1, abs=1e-12
    )


@pytest.mark.parametrize("r", R_VALUES)
def test_two_photon_bunching_amplitude(r):
    bs = beam_splitter_matrix(r)
    bunched = -1j * np.sqrt(2 * r * (1 - r))
    assert transition_amplitude(bs, (1, 1), (2, 0)) == pytest.approx(
        bunched, abs=1e-12
    )
    assert transition_amplitude(bs, (1, 1), (0, 2)) == pytest.approx(
        bunched, abs=1e-12
    )


@pytest.mark.parametrize("r", R_VALUES)
def test_single_photon_amplitudes(r):
    bs = beam_splitter_matrix(r)
    assert transition_amplitude(bs, (0, 1), (1, 0)) == pytest.approx(
        -1j * np.sqrt(1 - r), abs=1e-12
    )
    assert transition_amplitude(bs, (0, 1), (0, 1)) == pytest.approx(
        np.sqrt(r), abs=1e-12
    )


def test_amplitude_zero_when_photon_numbers_differ():
    bs = beam_splitter_matrix(0.4)
    assert transition_amplitude(bs, (1, 0), (1, 1)) == 0
    assert transition_amplitude(bs, (0, 0), (0, 0)) == pytest.approx(1.0)


def test_amplitude_shape_checks():
    bs = beam_splitter_matrix(0.4)
    with pytest.raises(ValueError):
        transition_amplitude(bs, (1, 0, 0), (0, 1))


# -------------------------------------------------------------------- evolve


def test_evolve_balanced_third_splitter():
    out = evolve(basis_state(TWO, (1, 1)), beam_splitter_matrix(1.0 / 3.0))
    assert out.amplitude((1, 1)) == pytest.approx(-1.0 / 3.0, abs=1e-12)
    assert out.amplitude((2, 0)) == pytest.approx(-2j / 3.0, abs=1e-12)
    assert out.amplitude((0, 2)) == pytest.approx(-2j / 3.0, abs=1e-12)


def test_evolve_hom_dip():
    out = evolve(basis_state(TWO, (1, 1)), beam_splitter_matrix(0.5))
    # the coincidence term interferes away entirely and is pruned
    assert (1, 1) not in out.terms
    assert out.amplitude((2, 0)) == pytest.approx(-1j / np.sqrt(2), abs=1e-12)
    assert out.amplitude((0, 2)) == pytest.approx(-1j / np.sqrt(2), abs=1e-12)


def test_evolve_vacuum_is_fixed():
    for r in (0.0, 0.3, 1.0):
        out = evolve(vacuum(TWO), beam_splitter_matrix(r))
        assert out.amplitude((0, 0)) == pytest.approx(1.0)
        assert len(out.terms) == 1


def test_evolve_norm_conservation():
    for _ in range(20):
        registry = ModeRegistry(("m0", "m1", "m2", "m3"))
        state = basis_state(registry, random_occupations(registry, 2))
        out = evolve(state, haar_random_unitary(4, rng))
        assert out.norm_squared() == pytest.approx(1.0, abs=1e-12)


def test_evolve_conserves_photon_number():
    registry = ModeRegistry(("m0", "m1", "m2"))
    state = basis_state(registry, (2, 1, 0))
    out = evolve(state, haar_random_unitary(3, rng))
    assert all(sum(occ) == 3 for occ in out.terms)


def test_evolve_respects_block_structure():
    # block-diagonal unitary cannot move photons across blocks
    block = np.zeros((4, 4), dtype=complex)
    block[:2, :2] = beam_splitter_matrix(0.3)
    block[2:, 2:] = beam_splitter_matrix(0.7)
    registry = ModeRegistry(("m0", "m1", "m2", "m3"))
    out = evolve(basis_state(registry, (1, 0, 0, 0)), block)
    assert all(occ[2] == 0 and occ[3] == 0 for occ in out.terms)


def test_evolve_dimension_mismatch():
    with pytest.raises(ValueError):
        evolve(basis_state(TWO, (1, 0)), np.eye(3))


def test_evolve_rejects_photon_totals_over_cap():
    registry = ModeRegistry(("a", "b"), photon_cap=2)
    state = basis_state(registry, (2, 2))  # per-mode OK, total 4 > cap
    with pytest.raises(ValueError):
        evolve(state, beam_splitter_matrix(0.5))


# -------------------------------------------------------------------- oracle


@pytest.mark.parametrize("r", (0.0, 1.0 / 3.0, 0.5, 1.0))
def test_oracle_matches_on_splitter_lines(r):
    bs = beam_splitter_matrix(r)
    for occ in ((0, 0), (0, 1), (1, 0), (1, 1)):
        state = basis_state(TWO, occ)
        assert evolve(state, bs).allclose(oracle_evolve(state, bs), tol=1e-12)


def test_oracle_matches_on_random_instances():
    for _ in range(60):
        modes = int(rng.integers(2, 7))
        registry = ModeRegistry(tuple(f"m{i}" for i in range(modes)))
        photons = int(rng.integers(0, 4))
        state = basis_state(registry, random_occupations(registry, photons))
        unitary = haar_random_unitary(modes, rng)
        left = evolve(state, unitary)
        right = oracle_evolve(state, unitary)
        assert np.sqrt((left - right).norm_squared()) < 1e-10


def test_oracle_vacuum_fixed():
    out = oracle_evolve(vacuum(TWO), beam_splitter_matrix(0.37))
    assert out.amplitude((0, 0)) == pytest.approx(1.0)


def test_composition_homomorphism():
    registry = ModeRegistry(("m0", "m1", "m2"))
    for _ in range(20):
        u = haar_random_unitary(3, rng)
        v = haar_random_unitary(3, rng)
        state = basis_state(registry, random_occupations(registry, 2))
        joint = evolve(state, u @ v)
        staged = evolve(evolve(state, v), u)
        assert np.sqrt((joint - staged).norm_squared()) < 1e-10
