import math

import numpy as np
import pytest

from conftest import linear_system, rwa_system
from qsubthermo import (
    FockConfig,
    InteractionKind,
    ModelError,
    OscillatorSystem,
    ThermalPreparation,
    TruncationError,
    build_hamiltonian,
    build_operators,
    destroy,
    evolve,
    thermal_occupation,
    thermal_state,
)
from qsubthermo.fock import thermal_product_state


def commutator(x, y):
    return x @ y - y @ x


class TestFockConfig:
    def test_rejects_tiny_dimensions(self):
        with pytest.raises(ModelError):
            FockConfig(1, 8)

    def test_auto_selection_tracks_tail(self):
        sys_ = linear_system()
        cfg = FockConfig.auto(sys_, ThermalPreparation(0.5, 1.0), tail_tol=1e-12)
        # geometric tail exp(-beta*omega*n) must fall below tail_tol, minimally
        assert math.exp(-0.5 * cfg.n_a) < 1e-12 <= math.exp(-0.5 * (cfg.n_a - 1))
        assert math.exp(-1.0 * cfg.n_b) < 1e-12 <= math.exp(-1.0 * (cfg.n_b - 1))

    def test_auto_selection_rejects_infeasible_temperatures(self):
        sys_ = linear_system()
        with pytest.raises(TruncationError, match="minimal feasible"):
            FockConfig.auto(sys_, ThermalPreparation(0.01, 0.02))


class TestOperators:
    def test_two_level_annihilator(self):
        assert np.array_equal(destroy(2), np.array([[0, 1], [0, 0]], dtype=complex))

    def test_commutator_has_known_corner_artifact(self, cfg_small):
        # [a, a^dag] = 1 except the top corner, which holds -(n-1)
        n = 7
        a = destroy(n)
        comm = commutator(a, a.conj().T)
        expected = np.eye(n, dtype=complex)
        expected[n - 1, n - 1] = -(n - 1)
        assert np.abs(comm - expected).max() < 1e-14

    def test_modes_commute_exactly(self, cfg_small):
        ops = build_operators(cfg_small)
        assert np.abs(commutator(ops.a, ops.b)).max() == 0.0
        assert np.abs(commutator(ops.a, ops.bdag)).max() == 0.0

    def test_quadratures_are_hermitian_and_canonical(self, cfg_small):
        ops = build_operators(cfg_small)
        for mat in (ops.x_a, ops.p_a, ops.x_b, ops.p_b):
            assert np.abs(mat - mat.conj().T).max() < 1e-14
        # [x, p] = i away from the truncation corner
        comm = commutator(ops.x_a, ops.p_a)
        interior = comm[: -cfg_small.n_b, : -cfg_small.n_b]
        assert np.abs(interior - 1j * np.eye(interior.shape[0])).max() < 1e-13


class TestHamiltonians:
    def test_parts_are_hermitian(self, cfg_small):
        for sys_ in (
            rwa_system(),
            linear_system(),
            OscillatorSystem(1.0, 1.0, InteractionKind.MINIMAL_A, m=1.0, q=0.2),
            OscillatorSystem(1.0, 1.0, InteractionKind.MINIMAL_B, m=1.0, q=0.2),
        ):
            parts = build_hamiltonian(sys_, cfg_small)
            for mat in (parts.h, parts.h0, parts.v):
                assert np.abs(mat - mat.conj().T).max() < 1e-12

    def test_rwa_conserves_bare_energy(self, cfg_small):
        parts = build_hamiltonian(rwa_system(), cfg_small)
        assert np.linalg.norm(commutator(parts.h0, parts.v)) < 1e-12

    def test_linear_does_not_conserve_bare_energy(self, cfg_small):
        parts = build_hamiltonian(linear_system(), cfg_small)
        assert np.linalg.norm(commutator(parts.h0, parts.v)) > 0.01

    def test_none_kind_has_zero_interaction(self, cfg_small):
        parts = build_hamiltonian(OscillatorSystem(1.0, 1.0, InteractionKind.NONE), cfg_small)
        assert np.abs(parts.v).max() == 0.0
        assert np.array_equal(parts.h, parts.h0)

    def test_minimal_true_energy_is_mechanical_energy(self, cfg_small):
        # H - H_b equals m(xdot_a^2 + w^2 x_a^2)/2 with m xdot_a = p_a - q x_b,
        # up to the w/2 zero-point constant absorbed by the bare H_b.  The only
        # residue is the b b^dag truncation corner, a diagonal -w*n_b/2 on the
        # top b-level, so the comparison masks out i_b = n_b - 1.
        m, q, omega = 1.0, 0.2, 1.0
        sys_ = OscillatorSystem(omega, omega, InteractionKind.MINIMAL_A, m=m, q=q)
        parts = build_hamiltonian(sys_, cfg_small)
        ops = build_operators(cfg_small, sys_)
        velocity = (ops.p_a - q * ops.x_b) / m
        mechanical = 0.5 * m * (velocity @ velocity + omega**2 * (ops.x_a @ ops.x_a))
        shift = 0.5 * omega * np.eye(cfg_small.dim)
        diff = (parts.h - parts.h_b) - (mechanical + shift)
        n_a, n_b = cfg_small.n_a, cfg_small.n_b
        interior = np.array([i for i in range(cfg_small.dim) if i % n_b != n_b - 1])
        assert np.abs(diff[np.ix_(interior, interior)]).max() < 1e-12
        corner = np.array([i for i in range(cfg_small.dim) if i % n_b == n_b - 1])
        assert np.allclose(np.diag(diff)[corner].real, -0.5 * omega * n_b, atol=1e-12)


class TestThermalState:
    def test_geometric_weights_at_beta_ln2(self):
        rho = thermal_state(math.log(2.0), 1.0, 3)
        assert np.allclose(np.diag(rho).real, [4 / 7, 2 / 7, 1 / 7], atol=1e-15)
        assert np.trace(rho).real == pytest.approx(1.0, abs=1e-15)

    def test_deep_cold_is_ground_projector(self):
        rho = thermal_state(50.0, 1.0, 6)
        expected = np.zeros((6, 6))
        expected[0, 0] = 1.0
        assert np.abs(rho - expected).max() < 1e-20

    def test_occupation_matches_closed_form(self):
        # truncation bias is ~ n * tail, so the tolerance scales with both
        n = 40
        rho = thermal_state(0.5, 1.0, n)
        number = np.diag(np.arange(n)).astype(complex)
        measured = np.trace(number @ rho).real
        tail = math.exp(-0.5 * n)
        assert measured == pytest.approx(thermal_occupation(0.5, 1.0), abs=2.0 * n * tail)

    def test_tail_enforcement(self):
        with pytest.raises(TruncationError):
            thermal_state(0.5, 1.0, 8, tail_tol=1e-12)
        thermal_state(0.5, 1.0, 8)  # no tolerance given: caller's responsibility


class TestEvolve:
    def test_zero_time_is_identity(self, cfg_small):
        parts = build_hamiltonian(linear_system(), cfg_small)
        rho0 = np.diag(thermal_product_state(linear_system(), ThermalPreparation(1.0, 1.0), cfg_small)).astype(complex)
        assert np.abs(evolve(parts.h, rho0, 0.0, cfg_small) - rho0).max() < 1e-14

    def test_thermal_product_stationary_under_bare_hamiltonian(self, cfg_small):
        sys_ = OscillatorSystem(1.0, 1.3, InteractionKind.NONE)
        parts = build_hamiltonian(sys_, cfg_small)
        rho0 = np.diag(thermal_product_state(sys_, ThermalPreparation(1.0, 0.8), cfg_small)).astype(complex)
        assert np.abs(evolve(parts.h0, rho0, 2.7, cfg_small) - rho0).max() < 1e-13

    def test_energy_conserved(self, cfg_small):
        sys_ = linear_system()
        parts = build_hamiltonian(sys_, cfg_small)
        rho0 = np.diag(thermal_product_state(sys_, ThermalPreparation(1.0, 1.5), cfg_small)).astype(complex)
        rho_t = evolve(parts.h, rho0, 2.0, cfg_small)
        e0 = np.trace(parts.h @ rho0).real
        et = np.trace(parts.h @ rho_t).real
        assert et == pytest.approx(e0, rel=1e-10)

    def test_unitarity_preserves_trace_and_purity(self, cfg_small):
        sys_ = linear_system(g=0.4)
        parts = build_hamiltonian(sys_, cfg_small)
        rho0 = np.diag(thermal_product_state(sys_, ThermalPreparation(0.9, 1.4), cfg_small)).astype(complex)
        purity0 = np.trace(rho0 @ rho0).real
        for t in (0.5, 2.0, 9.0):
            rho_t = evolve(parts.h, rho0, t, cfg_small)
            assert np.trace(rho_t).real == pytest.approx(1.0, abs=1e-10)
            assert np.trace(rho_t @ rho_t).real == pytest.approx(purity0, abs=1e-10)

    def test_rejects_non_hermitian_hamiltonian(self, cfg_small):
        bad = np.zeros((cfg_small.dim, cfg_small.dim), dtype=complex)
        bad[0, 1] = 1.0
        rho0 = np.eye(cfg_small.dim, dtype=complex) / cfg_small.dim
        with pytest.raises(ModelError):
            evolve(bad, rho0, 1.0, cfg_small)
