"""Exact-diagonalisation and ensemble oracles.

These routines are the independent ground truth the analytic kernels are
validated against, so they get their own pinned checks: small chains with
hand-derivable ground states, conservation laws under the quench evolution,
and measurement-ensemble identities on random X states.
"""
import numpy as np
import pytest

from xyquench import (ModelParams, assemble_xstate, c_l1, c_re,
                      correlators_nn, mrq)
from xyquench.oracle import (EDState, build_hamiltonian, ed_build,
                             ed_correlators, ed_two_site_rdm,
                             mode_consistency_correlators, mrq_pauli,
                             qubit_l1_coherence, sample_x_states,
                             sqc_ensemble, sqc_ensemble_terms)


class TestGroundState:
    def test_two_site_ising_ground_is_bell_pair(self):
        # gamma=1, h=0: ground state of the two-site chain is (|00>+|11>)/sqrt(2)
        state = EDState.from_fields(2, 1.0, 1.0, 0.0, 0.0)
        bell = np.zeros(4)
        bell[0] = bell[3] = 1.0 / np.sqrt(2.0)
        assert abs(bell @ state.psi0) == pytest.approx(1.0, abs=1e-10)

    def test_strong_field_energy_and_residual(self):
        state = EDState.from_fields(4, 1.0, 1.0, 2.0, 2.0)
        assert state.ground_energy < -8.0
        assert state.ground_residual < 1e-10

    def test_size_cap(self):
        with pytest.raises(ValueError, match="exact diagonalisation"):
            ed_build(ModelParams(16, 1.0, 1.0, 0.7, 1.0))

    def test_hamiltonian_is_symmetric(self):
        ham = build_hamiltonian(6, 1.0, 0.5, 0.8)
        assert np.abs(ham - ham.T).max() == 0.0


class TestEvolution:
    @pytest.mark.parametrize("t", [0.0, 5.0, 20.0])
    def test_norm_conserved(self, ed_state, t):
        state = ed_state(8)
        assert np.linalg.norm(state.evolved(t)) == pytest.approx(1.0, abs=1e-12)

    def test_energy_conserved(self, ed_state):
        state = ed_state(8)
        ham1 = build_hamiltonian(state.n, state.j, state.gamma, state.h1)
        for t in (0.0, 2.0, 7.5):
            psi = state.evolved(t)
            e_t = float(np.real(psi.conj() @ (ham1 @ psi)))
            assert e_t == pytest.approx(state.post_quench_energy(), abs=1e-10)

    def test_negative_time_rejected(self, ed_state):
        with pytest.raises(ValueError, match=">= 0"):
            ed_state(8).evolved(-0.5)

    def test_rdm_is_valid_x_state(self, ed_state):
        state = ed_state(8)
        for t in (0.0, 1.0, 4.0):
            x = ed_two_site_rdm(state, t)
            total = x.r11 + x.r22 + x.r33 + x.r44
            assert total == pytest.approx(1.0, abs=1e-12)
            assert min(x.eigenvalues()) > -1e-12


class TestSectorSolution:
    @pytest.mark.parametrize("n", [8, 10])
    def test_matches_ed_exactly(self, ed_state, n):
        # the closed sector solution shares the ED boundary condition, so
        # agreement is to machine precision at any finite size
        params = ModelParams(n, 1.0, 1.0, 0.7, 1.0)
        state = ed_state(n)
        for t in (0.0, 0.5, 1.5, 3.0):
            sector = np.array(mode_consistency_correlators(params, t))
            exact = np.array(ed_correlators(state, t))
            assert np.abs(sector - exact).max() < 1e-10


class TestProductionVsED:
    def test_finite_size_gap_shrinks(self, ed_state):
        devs = []
        for n in (8, 10, 12):
            params = ModelParams(n, 1.0, 1.0, 0.7, 1.0)
            state = ed_state(n)
            dev = 0.0
            for t in (0.0, 1.0, 2.0):
                ana = np.array(correlators_nn(params, t).bloch())
                dev = max(dev, float(np.abs(ana - np.array(ed_correlators(state, t))).max()))
            devs.append(dev)
        assert devs[0] > devs[1] > devs[2]
        assert devs[2] <= 4.0 / 12.0

    def test_static_gap_within_grid_bias(self, ed_state):
        devs = []
        for n in (8, 10, 12):
            params = ModelParams(n, 1.0, 1.0, 0.7, 1.0)
            ana = np.array(correlators_nn(params, 0.0).bloch())
            exact = np.array(ed_correlators(ed_state(n), 0.0))
            dev = float(np.abs(ana - exact).max())
            assert dev <= 4.0 / n
            devs.append(dev)
        assert devs[0] > devs[1] > devs[2]

    def test_large_n_magnetisation_near_small_chain(self, ed_state):
        params = ModelParams(100, 1.0, 1.0, 0.7, 1.0)
        gap = abs(correlators_nn(params, 5.0).mz - ed_correlators(ed_state(12), 5.0)[0])
        assert gap <= 1.0 / 3.0


class TestEnsembleMeasures:
    def test_polarised_state_pinned(self):
        x = assemble_xstate((1.0, 0.0, 0.0, 1.0))
        el1, ere = sqc_ensemble(x)
        assert el1 == pytest.approx(2.0, abs=1e-12)
        assert ere == pytest.approx(2.0, abs=1e-12)
        assert mrq_pauli(x) == pytest.approx(4.0, abs=1e-12)

    def test_maximally_mixed_pinned(self):
        x = assemble_xstate((0.0, 0.0, 0.0, 0.0))
        el1, ere = sqc_ensemble(x)
        assert el1 == pytest.approx(0.0, abs=1e-12)
        assert ere == pytest.approx(0.0, abs=1e-12)
        assert mrq_pauli(x) == pytest.approx(1.0, abs=1e-12)

    def test_closed_forms_match_ensemble(self):
        for bloch in sample_x_states(50, seed=101):
            el1, ere = sqc_ensemble(assemble_xstate(bloch))
            assert c_l1(bloch) == pytest.approx(el1, abs=1e-12)
            assert c_re(bloch) == pytest.approx(ere, abs=1e-12)
            assert mrq(bloch) == pytest.approx(mrq_pauli(assemble_xstate(bloch)), abs=1e-12)

    def test_transverse_steering_of_diagonal_state_is_incoherent(self):
        # steering a diagonal state along x or y leaves qubit B diagonal,
        # so its z-basis coherence must vanish outcome by outcome
        rng = np.random.default_rng(55)
        probs = rng.uniform(0.05, 1.0, 4)
        rho = np.diag(probs / probs.sum()).astype(complex)
        for mu, _a, nu, _p, l1_term, re_term in sqc_ensemble_terms(rho):
            if mu in ("x", "y") and nu == "z":
                assert l1_term <= 1e-14
                assert re_term <= 1e-13

    def test_qubit_coherence_basis_dependence(self):
        plus = 0.5 * np.array([[1.0, 1.0], [1.0, 1.0]], dtype=complex)
        assert qubit_l1_coherence(plus, "z") == pytest.approx(1.0, abs=1e-12)
        assert qubit_l1_coherence(plus, "x") == pytest.approx(0.0, abs=1e-12)

    def test_rejects_malformed_density_matrix(self):
        with pytest.raises(ValueError, match="shape"):
            sqc_ensemble(np.eye(3) / 3.0)
        with pytest.raises(ValueError, match="trace"):
            sqc_ensemble(np.eye(4))


class TestSampler:
    def test_deterministic_and_valid(self):
        first = sample_x_states(40, seed=2)
        second = sample_x_states(40, seed=2)
        assert first == second
        for bloch in first:
            assemble_xstate(bloch)  # would raise if outside the X cone
