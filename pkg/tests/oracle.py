# -*- coding: utf-8 -*-

import doctest
import math
import os
import unittest
from unittest import mock

import numpy as np

from dickex.oracle import *
from dickex.exception import *
from dickex.dicke import expand_to_product
from dickex.hilbert import ModeSpec, basis_state, new_state
from dickex.testing import *

import dickex.oracle
doctest.testmod(dickex.oracle)


def _one_photon(N, representation=AtomRepresentation.SYMMETRIC, g=1.0, cutoff=1):
    return HamiltonianSpec(InteractionKind.ONE_PHOTON, g, (ModeSpec('a', cutoff),), N,
            representation)


def _raman(N, representation=AtomRepresentation.SYMMETRIC, f=1.0):
    return HamiltonianSpec(InteractionKind.RAMAN, f, (ModeSpec('c', 1), ModeSpec('b', 1)), N,
            representation)


class TestHamiltonianSpec(DickexTest):
    def test_mode_count(self):
        with self.assertRaises(StateError):
            HamiltonianSpec(InteractionKind.RAMAN, 1.0, (ModeSpec('a', 1),), 1)

    def test_three_photon_atoms(self):
        modes = (ModeSpec('a', 1), ModeSpec('b', 1), ModeSpec('c', 1))
        with self.assertRaises(StateError):
            HamiltonianSpec(InteractionKind.THREE_PHOTON, 1.0, modes, 2)

    def test_needs_atoms(self):
        with self.assertRaises(StateError):
            _one_photon(0)

    def test_unknown_kind(self):
        with self.assertRaises(StateError):
            HamiltonianSpec('four_photon', 1.0, (ModeSpec('a', 1),), 1)

    def test_order_only_for_m_photon(self):
        with self.assertRaises(StateError):
            HamiltonianSpec(InteractionKind.ONE_PHOTON, 1.0, (ModeSpec('a', 1),), 1, order=2)

    def test_active_atoms(self):
        spec = HamiltonianSpec(InteractionKind.ONE_PHOTON, 1.0, (ModeSpec('a', 1),), 4,
                AtomRepresentation.PRODUCT, active_atoms=(3, 1))
        self.assertEqual(spec.coupled_atoms, (1, 3))
        with self.assertRaises(StateError):
            HamiltonianSpec(InteractionKind.ONE_PHOTON, 1.0, (ModeSpec('a', 1),), 4,
                    active_atoms=(0,))


class TestBuildHamiltonian(DickexTest):
    def test_single_atom_matrix(self):
        H = build_hamiltonian(_one_photon(1, AtomRepresentation.PRODUCT, g=0.5))
        # basis order: |0;0>, |0;1>, |1;0>, |1;1>
        expected = np.zeros((4, 4), dtype=complex)
        expected[1, 2] = 0.5j
        expected[2, 1] = -0.5j
        np.testing.assert_allclose(H.entries, expected, atol=1e-15)

    def test_hermitian(self):
        for spec in (_one_photon(3), _raman(2, AtomRepresentation.PRODUCT),
                HamiltonianSpec(InteractionKind.M_PHOTON, 1.0, (ModeSpec('a', 3),), 2, order=2)):
            self.assertLess(build_hamiltonian(spec).hermiticity_defect, 1e-12)

    def test_reconstruction(self):
        H = build_hamiltonian(_raman(3))
        self.assertLess(H.reconstruction_error(), 1e-11)

    def test_raman_commutes_with_charge(self):
        H = build_hamiltonian(_raman(2))
        charge = np.diag([label.fock[1] + label.atom_part for label in H.basis])
        np.testing.assert_allclose(H.entries @ charge - charge @ H.entries, 0, atol=1e-12)

    def test_guard(self):
        with self.assertRaises(GuardError):
            build_hamiltonian(_one_photon(12, AtomRepresentation.PRODUCT))

    def test_guard_override(self):
        with mock.patch.dict(os.environ, {'DICKE_MAX_DIM': '8'}):
            with self.assertRaises(GuardError):
                build_hamiltonian(_one_photon(3, AtomRepresentation.PRODUCT))
        with mock.patch.dict(os.environ, {'DICKE_MAX_DIM': 'many'}):
            with self.assertRaises(ConfigError):
                max_dimension()

    def test_not_hermitian(self):
        config = _one_photon(1).space
        with self.assertRaises(StateError):
            DenseOperator(config, np.triu(np.ones((4, 4))))


class TestEvolveExact(DickexTest):
    def test_identity_at_zero(self):
        H = build_hamiltonian(_one_photon(2))
        x = basis_state(H.config, (1,), 0)
        self.assertStateClose(evolve_exact(H, x, 0.0), x)

    def test_reversal(self):
        H = build_hamiltonian(_raman(3, AtomRepresentation.PRODUCT))
        x = embed_symmetric(basis_state(_raman(3).space, (0, 1), 1))
        back = evolve_exact(H, evolve_exact(H, x, 0.8), -0.8)
        self.assertLess(compare_states(back, x, False), 1e-11)

    def test_w_preparation(self):
        H = build_hamiltonian(_one_photon(4, AtomRepresentation.PRODUCT))
        x = embed_symmetric(basis_state(_one_photon(4).space, (1,), 0))
        y = evolve_exact(H, x, math.pi / 4)
        w = embed_symmetric(basis_state(_one_photon(4).space, (0,), 1))
        self.assertLess(compare_states(w, y, False), 1e-10)

    def test_basis_mismatch(self):
        H = build_hamiltonian(_one_photon(2))
        with self.assertRaises(StateError):
            evolve_exact(H, basis_state(_one_photon(3).space, (1,), 0), 1.0)

    def test_leakage(self):
        H = build_hamiltonian(_one_photon(2, cutoff=1))
        config = H.config
        with self.assertRaises(LeakageError) as context:
            evolve_exact(H, basis_state(config, (1,), 1), 1.0)
        self.assertEqual(context.exception.mode, 'a')
        self.assertEqual(context.exception.bound, 2)

    def test_conservation(self):
        spec = HamiltonianSpec(InteractionKind.M_PHOTON, 1.0, (ModeSpec('a', 3),), 2, order=2)
        H = build_hamiltonian(spec)
        x = new_state(H.config, [(((3,), 0), 0.6), (((1,), 1), 0.8)])
        before = conserved_expectations(spec, x)
        for t in (0.3, 1.1, 2.9):
            after = conserved_expectations(spec, evolve_exact(H, x, t))
            self.assertAlmostEqual(after[0], before[0], places=11)


class TestCharges(DickexTest):
    def test_three_photon(self):
        modes = (ModeSpec('a', 1), ModeSpec('b', 1), ModeSpec('c', 2))
        spec = HamiltonianSpec(InteractionKind.THREE_PHOTON, 1.0, modes)
        label = BasisLabel((0, 1, 2), 0)
        self.assertEqual(conserved_charges(spec, label), (1, 2))
        self.assertEqual(max_reachable_occupation(spec, label), (1, 1, 2))

    def test_raman(self):
        label = BasisLabel((0, 1), 2)
        self.assertEqual(conserved_charges(_raman(3), label), (3, 1))
        self.assertEqual(max_reachable_occupation(_raman(3), label), (1, 1))

    def test_active_atoms(self):
        spec = HamiltonianSpec(InteractionKind.ONE_PHOTON, 1.0, (ModeSpec('a', 1),), 3,
                AtomRepresentation.PRODUCT, active_atoms=(0,))
        self.assertEqual(conserved_charges(spec, BasisLabel((1,), (0, 1, 1))), (1,))


class TestCompareStates(DickexTest):
    def test_same(self):
        x = new_state(_one_photon(2).space, [(((1,), 0), 0.6), (((0,), 1), 0.8j)])
        self.assertEqual(compare_states(x, x), 0.0)

    def test_global_phase(self):
        x = new_state(_one_photon(2).space, [(((1,), 0), 0.6), (((0,), 1), 0.8j)])
        y = x * complex(math.cos(0.7), math.sin(0.7))
        self.assertLess(compare_states(x, y), 1e-14)
        self.assertGreater(compare_states(x, y, align_phase=False), 0.1)

    def test_orthogonal(self):
        config = _one_photon(2).space
        self.assertAlmostEqual(compare_states(basis_state(config, (0,), 0),
                basis_state(config, (1,), 0)), 1.0, places=15)

    def test_mismatch(self):
        with self.assertRaises(StateError):
            compare_states(basis_state(_one_photon(2).space, (0,), 0),
                    basis_state(_one_photon(3).space, (0,), 0))


class TestEmbedSymmetric(DickexTest):
    def test_ground(self):
        x = embed_symmetric(basis_state(_one_photon(3).space, (0,), 0))
        self.assertAmplitude(x, ((0,), (0, 0, 0)), 1.0)

    def test_w3(self):
        config = SpaceConfig((), 3)
        x = embed_symmetric(basis_state(config, (), 1))
        self.assertStateClose(x, expand_to_product(1, 3))

    def test_linear(self):
        config = _one_photon(3).space
        u = basis_state(config, (1,), 0)
        v = basis_state(config, (0,), 2)
        left = embed_symmetric(0.6 * u + 0.8j * v)
        right = 0.6 * embed_symmetric(u) + 0.8j * embed_symmetric(v)
        self.assertStateClose(left, right)
        self.assertNormalized(left)

    def test_ensembles(self):
        config = SpaceConfig((ModeSpec('a', 1),), 3, ensembles=(1, 2))
        x = embed_symmetric(basis_state(config, (0,), (1, 1)))
        self.assertEqual(len(x), 2)
        self.assertAmplitude(x, ((0,), (1, 1, 0)), 1 / math.sqrt(2))
        self.assertAmplitude(x, ((0,), (1, 0, 1)), 1 / math.sqrt(2))

    def test_guard(self):
        with self.assertRaises(GuardError):
            embed_symmetric(basis_state(SpaceConfig((), 13), (), 0))

    def test_sector_consistency(self):
        for N in range(1, 6):
            symmetric = build_hamiltonian(_raman(N))
            product = build_hamiltonian(_raman(N, AtomRepresentation.PRODUCT))
            x = new_state(symmetric.config, [(((0, 1), 0), 0.6), (((1, 0), N), 0.8)])
            for t in (0.4, 1.3):
                self.assertLess(compare_states(embed_symmetric(evolve_exact(symmetric, x, t)),
                        evolve_exact(product, embed_symmetric(x), t), False), 1e-10)


if __name__ == '__main__':
    unittest.main()
