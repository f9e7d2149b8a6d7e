# -*- coding: utf-8 -*-

import doctest
import math
import unittest
from dickex.dicke import *
from dickex.exception import *
from dickex.hilbert import ModeSpec, basis_state, new_state, norm, normalize, zero_state
from dickex.testing import *

import dickex.dicke
doctest.testmod(dickex.dicke)


def _atoms(N):
    return SpaceConfig((), N)


class TestDickeNorm(DickexTest):
    def test_values(self):
        self.assertEqual(dicke_norm_sq(4, 2), 6)
        self.assertEqual(dicke_norm_sq(9, 0), 1)
        self.assertEqual(dicke_norm_sq(60, 30), math.comb(60, 30))

    def test_pascal(self):
        for N in range(1, 20):
            for m in range(1, N):
                self.assertEqual(dicke_norm_sq(N, m),
                        dicke_norm_sq(N - 1, m - 1) + dicke_norm_sq(N - 1, m))

    def test_guard(self):
        with self.assertRaises(GuardError):
            dicke_norm_sq(61, 1)

    def test_range(self):
        with self.assertRaises(StateError):
            dicke_norm_sq(3, 4)
        with self.assertRaises(StateError):
            dicke_norm_sq(3, -1)

    def test_unnormalized_amplitude(self):
        self.assertAlmostEqual(to_unnormalized_amplitude(1.0, 1, 4), 0.5, places=12)
        self.assertAlmostEqual(from_unnormalized_amplitude(0.5, 1, 4), 1.0, places=12)


class TestCollectiveLadder(DickexTest):
    def test_raise_ground(self):
        x = apply_S10(basis_state(_atoms(4), (), 0))
        self.assertAmplitude(x, ((), 1), 2.0)

    def test_raise_top(self):
        self.assertEqual(len(apply_S10(basis_state(_atoms(3), (), 3))), 0)

    def test_lower_ground(self):
        self.assertEqual(len(apply_S01(basis_state(_atoms(3), (), 0))), 0)

    def test_lower(self):
        x = apply_S01(basis_state(_atoms(4), (), 1))
        self.assertAmplitude(x, ((), 0), 2.0)

    def test_repeated_raising(self):
        for N in range(1, 9):
            x = basis_state(_atoms(N), (), 0)
            for m in range(1, N + 1):
                x = apply_S10(x)
                # S10^m |0;N> = m! |m;N>, of norm m! sqrt(C(N,m))
                expected = math.factorial(m) * math.sqrt(dicke_norm_sq(N, m))
                self.assertAlmostEqual(norm(x) / expected, 1.0, places=12)
                self.assertStateClose(normalize(x), basis_state(_atoms(N), (), m))

    def test_product_rep_rejected(self):
        config = SpaceConfig((), 2, AtomRepresentation.PRODUCT)
        with self.assertRaises(SectorError):
            apply_S10(basis_state(config, (), (0, 0)))

    def test_ensemble_selection(self):
        config = SpaceConfig((ModeSpec('a', 1),), 3, ensembles=(1, 2))
        ground = basis_state(config, (0,), (0, 0))
        self.assertAmplitude(apply_S10(ground, 0), ((0,), (1, 0)), 1.0)
        self.assertAmplitude(apply_S10(ground, 1), ((0,), (0, 1)), math.sqrt(2))
        summed = apply_S10(ground)
        self.assertAlmostEqual(norm(summed) ** 2, 3.0, places=12)

    def test_unknown_ensemble(self):
        with self.assertRaises(StateError):
            apply_S10(basis_state(_atoms(2), (), 0), 1)


class TestProductSpace(DickexTest):
    def test_w3(self):
        w = expand_to_product(1, 3)
        self.assertEqual(len(w), 3)
        for bits in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
            self.assertAmplitude(w, ((), bits), 1 / math.sqrt(3))

    def test_ground(self):
        self.assertAmplitude(expand_to_product(0, 4), ((), (0, 0, 0, 0)), 1.0)

    def test_expansion_guard(self):
        with self.assertRaises(GuardError):
            expand_to_product(1, 21)

    def test_sector_agreement(self):
        for N in range(1, 9):
            for m in range(N + 1):
                symmetric = apply_S10(basis_state(_atoms(N), (), m))
                product = apply_product_S10(expand_to_product(m, N))
                expected = zero_state(product.config)
                for label, amp in symmetric.amplitudes.items():
                    expected = expected + amp * expand_to_product(label.atom_part, N)
                self.assertStateClose(product, expected)

    def test_product_lowering(self):
        x = apply_product_S01(expand_to_product(1, 2))
        self.assertAmplitude(x, ((), (0, 0)), math.sqrt(2))

    def test_product_ladder_needs_product(self):
        with self.assertRaises(SectorError):
            apply_product_S10(basis_state(_atoms(2), (), 0))


class TestProjection(DickexTest):
    def test_projection_of_expansion(self):
        for N in range(1, 7):
            for m in range(N + 1):
                sector, residual = project_to_sector(expand_to_product(m, N))
                self.assertStateClose(sector, basis_state(_atoms(N), (), m))
                self.assertLess(residual, 1e-12)

    def test_ground_bits(self):
        config = SpaceConfig((), 3, AtomRepresentation.PRODUCT)
        sector, residual = project_to_sector(basis_state(config, (), (0, 0, 0)))
        self.assertAmplitude(sector, ((), 0), 1.0)
        self.assertEqual(residual, 0.0)

    def test_asymmetric_residual(self):
        config = SpaceConfig((), 2, AtomRepresentation.PRODUCT)
        singlet = new_state(config, [(((), (0, 1)), 1 / math.sqrt(2)),
                (((), (1, 0)), -1 / math.sqrt(2))])
        sector, residual = project_to_sector(singlet)
        self.assertEqual(len(sector), 0)
        self.assertAlmostEqual(residual, 1.0, places=12)

    def test_single_bitstring(self):
        config = SpaceConfig((), 2, AtomRepresentation.PRODUCT)
        sector, residual = project_to_sector(basis_state(config, (), (1, 0)))
        self.assertAmplitude(sector, ((), 1), 1 / math.sqrt(2))
        self.assertAlmostEqual(residual, 1 / math.sqrt(2), places=12)

    def test_symmetric_rejected(self):
        with self.assertRaises(SectorError):
            project_to_sector(basis_state(_atoms(2), (), 0))


if __name__ == '__main__':
    unittest.main()
