"""Registry and sparse-state algebra."""

import numpy as np
import pytest

from fockgate import (
    ModeRegistry,
    PureState,
    basis_state,
    single_photon,
    total_photons,
    vacuum,
)

rng = np.random.default_rng(20240817)


def random_state(registry, n_terms=3):
    terms = {}
    for _ in range(n_terms):
        occ = tuple(int(rng.integers(0, 3)) for _ in range(registry.count))
        terms[occ] = complex(rng.standard_normal(), rng.standard_normal())
    return PureState(registry, terms)


# ----------------------------------------------------------------- registry


def test_registry_basics():
    reg = ModeRegistry(("q1H", "q1V", "q2H", "q2V"))
    assert reg.count == 4
    assert reg.labels == ("q1H", "q1V", "q2H", "q2V")
    assert reg.index("q2H") == 2
    assert reg.photon_cap == 4


def test_registry_rejects_duplicates_and_unknowns():
    with pytest.raises(ValueError):
        ModeRegistry(("a", "a"))
    with pytest.raises(ValueError):
        ModeRegistry(())
    reg = ModeRegistry(("a", "b"))
    with pytest.raises(ValueError):
        reg.index("c")


def test_registry_validate():
    reg = ModeRegistry(("a", "b"), photon_cap=2)
    assert reg.validate([1, 2]) == (1, 2)
    with pytest.raises(ValueError):
        reg.validate((1,))
    with pytest.raises(ValueError):
        reg.validate((0, 3))
    with pytest.raises(ValueError):
        reg.validate((-1, 0))


def test_registry_equality_is_by_value():
    assert ModeRegistry(("a", "b")) == ModeRegistry(("a", "b"))
    assert ModeRegistry(("a", "b")) != ModeRegistry(("b", "a"))


# -------------------------------------------------------------- basis states


def test_vacuum_and_basis_state():
    reg = ModeRegistry(("a", "b", "c", "d"))
    vac = vacuum(reg)
    assert vac.norm_squared() == pytest.approx(1.0)
    assert vac.amplitude((0, 0, 0, 0)) == 1.0

    two = basis_state(ModeRegistry(("a", "b")), (1, 1))
    assert two.amplitude((1, 1)) == 1.0
    assert two.amplitude((2, 0)) == 0.0


def test_basis_state_validation():
    reg = ModeRegistry(("a", "b"))
    with pytest.raises(ValueError):
        basis_state(reg, (0, 5))  # above the photon cap
    with pytest.raises(ValueError):
        basis_state(reg, (1, 1, 0))


def test_single_photon_and_total():
    reg = ModeRegistry(("q1H", "q1V"))
    st = single_photon(reg, "q1V")
    assert st.amplitude((0, 1)) == 1.0
    assert total_photons((2, 0, 1)) == 3


# ------------------------------------------------------------ inner products


def test_orthonormality():
    reg = ModeRegistry(("a", "b"))
    kets = [basis_state(reg, occ) for occ in [(0, 0), (1, 0), (0, 1), (1, 1)]]
    for i, bra in enumerate(kets):
        for j, ket in enumerate(kets):
            expected = 1.0 if i == j else 0.0
            assert bra.inner_product(ket) == pytest.approx(expected)


def test_inner_product_sesquilinearity():
    reg = ModeRegistry(("a", "b", "c"))
    for _ in range(20):
        a, b = random_state(reg), random_state(reg)
        alpha = complex(rng.standard_normal(), rng.standard_normal())
        lhs = a.scaled(alpha).inner_product(b)
        assert lhs == pytest.approx(np.conj(alpha) * a.inner_product(b))
        rhs = a.inner_product(b.scaled(alpha))
        assert rhs == pytest.approx(alpha * a.inner_product(b))


def test_inner_product_registry_mismatch():
    with pytest.raises(ValueError):
        vacuum(ModeRegistry(("a", "b"))).inner_product(vacuum(ModeRegistry(("a", "c"))))


# ------------------------------------------------------------------- algebra


def test_add_sub_and_scaled():
    reg = ModeRegistry(("a", "b"))
    st = basis_state(reg, (1, 0)) + basis_state(reg, (0, 1)).scaled(1j)
    assert st.amplitude((1, 0)) == 1.0
    assert st.amplitude((0, 1)) == 1j
    diff = st - st
    assert diff.norm_squared() == pytest.approx(0.0)
    with pytest.raises(ValueError):
        st + vacuum(ModeRegistry(("x", "y")))


def test_normalize_round_trip():
    reg = ModeRegistry(("a", "b", "c"))
    for _ in range(10):
        st = random_state(reg)
        unit, weight = st.normalize()
        assert unit.norm_squared() == pytest.approx(1.0, abs=1e-12)
        assert weight == pytest.approx(st.norm_squared())


def test_normalize_zero_state_raises():
    reg = ModeRegistry(("a",))
    with pytest.raises(ValueError):
        PureState(reg, {}).normalize()


def test_norm_squared_efficiency_example():
    reg = ModeRegistry(("q1H", "q2H"))
    attenuated = basis_state(reg, (1, 1)).scaled(1.0 / 3.0)
    assert attenuated.norm_squared() == pytest.approx(1.0 / 9.0, abs=1e-12)


def test_tiny_amplitudes_are_pruned():
    reg = ModeRegistry(("a", "b"))
    st = PureState(reg, {(1, 0): 1.0, (0, 1): 1e-15})
    assert (0, 1) not in st.terms


# -------------------------------------------------------------------- tensor


def test_tensor_builds_two_port_inputs():
    port1 = ModeRegistry(("q1H", "q1V"))
    port2 = ModeRegistry(("q2H", "q2V"))
    hh = single_photon(port1, "q1H").tensor(single_photon(port2, "q2H"))
    assert hh.registry.labels == ("q1H", "q1V", "q2H", "q2V")
    assert hh.amplitude((1, 0, 1, 0)) == 1.0


def test_tensor_norm_multiplies():
    rega = ModeRegistry(("a", "b"))
    regb = ModeRegistry(("c",))
    for _ in range(10):
        a, b = random_state(rega), random_state(regb)
        product = a.tensor(b)
        assert product.norm_squared() == pytest.approx(
            a.norm_squared() * b.norm_squared(), rel=1e-12
        )


def test_tensor_rejects_overlapping_labels():
    with pytest.raises(ValueError):
        vacuum(ModeRegistry(("a", "b"))).tensor(vacuum(ModeRegistry(("b", "c"))))


def test_vacuum_tensor_vacuum():
    joined = vacuum(ModeRegistry(("a", "b"))).tensor(vacuum(ModeRegistry(("c", "d"))))
    assert joined.amplitude((0, 0, 0, 0)) == 1.0
    assert joined.norm_squared() == pytest.approx(1.0)
