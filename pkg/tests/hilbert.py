# -*- coding: utf-8 -*-

import doctest
import json
import math
import unittest
from dickex.hilbert import *
from dickex.exception import *
from dickex.testing import *

import dickex.hilbert
doctest.testmod(dickex.hilbert)


def _single_mode(N=2, cutoff=1):
    return SpaceConfig([ModeSpec('a', cutoff)], N)


class TestSpaceConfig(DickexTest):
    def test_dimension(self):
        config = SpaceConfig([ModeSpec('c', 1), ModeSpec('b', 2)], 3)
        self.assertEqual(config.dimension, 2 * 3 * 4)
        self.assertEqual(config.mode_labels, ('c', 'b'))
        self.assertEqual(config.cutoffs, (1, 2))

    def test_product_dimension(self):
        config = SpaceConfig([ModeSpec('a', 1)], 3, AtomRepresentation.PRODUCT)
        self.assertEqual(config.atom_dimension, 8)
        self.assertEqual(len(list(config.labels())), 16)

    def test_labels_lexicographic(self):
        labels = list(_single_mode(1).labels())
        self.assertEqual(labels, sorted(labels))
        self.assertEqual(labels[0], BasisLabel((0,), 0))
        self.assertEqual(labels[-1], BasisLabel((1,), 1))

    def test_ensembles(self):
        config = SpaceConfig([ModeSpec('a', 1)], 5, ensembles=(2, 3))
        self.assertTrue(config.multi_ensemble)
        self.assertEqual(config.ground_atoms(), (0, 0))
        self.assertEqual(config.atom_dimension, 3 * 4)

    def test_bad_partition(self):
        with self.assertRaises(StateError):
            SpaceConfig([ModeSpec('a', 1)], 5, ensembles=(2, 2))

    def test_product_partition(self):
        with self.assertRaises(StateError):
            SpaceConfig([], 4, AtomRepresentation.PRODUCT, (2, 2))

    def test_duplicate_modes(self):
        with self.assertRaises(StateError):
            SpaceConfig([ModeSpec('a', 1), ModeSpec('a', 2)], 1)

    def test_negative_cutoff(self):
        with self.assertRaises(StateError):
            ModeSpec('a', -1)

    def test_unknown_mode(self):
        with self.assertRaises(StateError):
            _single_mode().mode_index('b')

    def test_with_cutoffs(self):
        config = _single_mode().with_cutoffs([4])
        self.assertEqual(config.cutoffs, (4,))
        self.assertEqual(config.n_atoms, 2)


class TestNewState(DickexTest):
    def test_entries(self):
        x = new_state(_single_mode(), [(((1,), 0), 0.6), (((0,), 1), 0.8j)])
        self.assertAmplitude(x, ((1,), 0), 0.6)
        self.assertAmplitude(x, ((0,), 1), 0.8j)
        self.assertAmplitude(x, ((0,), 2), 0)
        self.assertNormalized(x)

    def test_duplicate_label(self):
        with self.assertRaises(StateError):
            new_state(_single_mode(), [(((1,), 0), 0.6), (((1,), 0), 0.8)])

    def test_occupation_over_cutoff(self):
        with self.assertRaises(StateError):
            new_state(_single_mode(), [(((2,), 0), 1.0)])

    def test_excitation_out_of_range(self):
        with self.assertRaises(StateError):
            new_state(_single_mode(N=2), [(((0,), 3), 1.0)])

    def test_bad_bits(self):
        config = SpaceConfig([], 3, AtomRepresentation.PRODUCT)
        with self.assertRaises(StateError):
            new_state(config, [(((), (1, 0)), 1.0)])
        with self.assertRaises(StateError):
            new_state(config, [(((), (1, 0, 2)), 1.0)])

    def test_fractional_label(self):
        with self.assertRaises(StateError):
            new_state(_single_mode(), [(((1.7,), 0.2), 1.0)])
        with self.assertRaises(StateError):
            new_state(_single_mode(), [(((0,), 1.5), 1.0)])
        with self.assertRaises(StateError):
            BasisLabel((0,), (1, 0.5))
        self.assertEqual(BasisLabel((1.0,), 2.0), BasisLabel((1,), 2))

    def test_multi_ensemble_label(self):
        config = SpaceConfig([ModeSpec('a', 1)], 3, ensembles=(1, 2))
        x = new_state(config, [(((0,), (1, 2)), 1.0)])
        self.assertEqual(next(iter(x.amplitudes)).excitations, 3)
        with self.assertRaises(StateError):
            new_state(config, [(((0,), (2, 0)), 1.0)])


class TestAlgebra(DickexTest):
    def test_inner_conjugate_linear(self):
        config = _single_mode()
        x = new_state(config, [(((0,), 1), 1j)])
        y = new_state(config, [(((0,), 1), 1.0)])
        self.assertComplexClose(inner(x, y), -1j)
        self.assertComplexClose(inner(y, x), 1j)

    def test_inner_config_mismatch(self):
        with self.assertRaises(StateError):
            inner(zero_state(_single_mode(2)), zero_state(_single_mode(3)))

    def test_norm_and_normalize(self):
        x = new_state(_single_mode(), [(((1,), 0), 3.0), (((0,), 1), 4.0)])
        self.assertAlmostEqual(norm(x), 5.0, places=12)
        self.assertNormalized(normalize(x))
        self.assertAmplitude(normalize(x), ((1,), 0), 0.6)

    def test_normalize_idempotent(self):
        x = new_state(_single_mode(), [(((1,), 0), 0.3 - 0.2j), (((0,), 1), 1.7), (((0,), 2), -4j)])
        once = normalize(x)
        self.assertStateClose(normalize(once), once, 1e-12)
        self.assertAlmostEqual(norm(once), 1.0, places=12)

    def test_inner_self_is_real(self):
        x = new_state(_single_mode(), [(((1,), 0), 0.3 - 0.2j), (((0,), 1), 1.7j), (((0,), 2), -4)])
        value = inner(x, x)
        self.assertEqual(value.imag, 0.0)
        self.assertAlmostEqual(value.real, 0.13 + 2.89 + 16, places=12)
        self.assertEqual(inner(zero_state(x.config), zero_state(x.config)), 0)

    def test_normalize_zero(self):
        with self.assertRaises(StateError):
            normalize(zero_state(_single_mode()))

    def test_fidelity(self):
        config = _single_mode()
        x = basis_state(config, (1,), 0)
        y = new_state(config, [(((1,), 0), 1 / math.sqrt(2)), (((0,), 1), 1j / math.sqrt(2))])
        self.assertAlmostEqual(fidelity(x, y), 0.5, places=12)
        self.assertAlmostEqual(fidelity(x, x), 1.0, places=12)

    def test_fidelity_unnormalized(self):
        config = _single_mode()
        with self.assertRaises(StateError):
            fidelity(basis_state(config, (1,), 0) * 2, basis_state(config, (1,), 0))

    def test_arithmetic_prunes(self):
        x = basis_state(_single_mode(), (1,), 0)
        self.assertEqual(len(x - x), 0)
        self.assertEqual(len(x * 1e-15), 0)
        self.assertAmplitude(x / 2 + x / 2, ((1,), 0), 1.0)
        self.assertAmplitude(-x, ((1,), 0), -1.0)


class TestBoson(DickexTest):
    def test_lower(self):
        config = _single_mode(cutoff=3)
        x = apply_boson(basis_state(config, (3,), 0), 'a', LOWER)
        self.assertAmplitude(x, ((2,), 0), math.sqrt(3))
        self.assertFalse(x.leaked)

    def test_lower_vacuum(self):
        x = apply_boson(basis_state(_single_mode(), (0,), 0), 'a', LOWER)
        self.assertEqual(len(x), 0)
        self.assertFalse(x.leaked)

    def test_raise(self):
        config = _single_mode(cutoff=3)
        x = apply_boson(basis_state(config, (1,), 1), 'a', RAISE)
        self.assertAmplitude(x, ((2,), 1), math.sqrt(2))

    def test_raise_past_cutoff(self):
        x = apply_boson(basis_state(_single_mode(), (1,), 0), 'a', RAISE)
        self.assertEqual(len(x), 0)
        self.assertTrue(x.leaked)
        self.assertTrue((x + zero_state(x.config)).leaked)

    def test_number_products(self):
        config = _single_mode(cutoff=5)
        for n in range(5):
            x = basis_state(config, (n,), 0)
            up_down = apply_boson(apply_boson(x, 'a', RAISE), 'a', LOWER)
            self.assertStateClose(up_down, x * (n + 1), 1e-12)
            down_up = apply_boson(apply_boson(x, 'a', LOWER), 'a', RAISE)
            self.assertStateClose(down_up, x * n, 1e-12)

    def test_power(self):
        config = _single_mode(cutoff=4)
        x = apply_boson_power(basis_state(config, (4,), 0), 'a', LOWER, 2)
        self.assertAmplitude(x, ((2,), 0), math.sqrt(12))

    def test_bad_kind(self):
        with self.assertRaises(StateError):
            apply_boson(basis_state(_single_mode(), (1,), 0), 'a', 'sideways')

    def test_two_modes(self):
        config = SpaceConfig([ModeSpec('c', 1), ModeSpec('b', 1)], 1)
        x = apply_boson(apply_boson(basis_state(config, (0, 1), 0), 'b', LOWER), 'c', RAISE)
        self.assertStateClose(x, basis_state(config, (1, 0), 0))


class TestPopulations(DickexTest):
    def test_population(self):
        config = _single_mode()
        x = new_state(config, [(((1,), 0), 0.6), (((0,), 1), 0.8)])
        self.assertAlmostEqual(population(x, lambda label: label.fock == (0,)), 0.64, places=12)
        weights = populations(x)
        self.assertAlmostEqual(sum(weights.values()), 1.0, places=12)

    def test_purity_product(self):
        config = _single_mode()
        x = new_state(config, [(((0,), 0), 0.6), (((0,), 1), 0.8)])
        self.assertAlmostEqual(mode_purity(x), 1.0, places=12)

    def test_purity_entangled(self):
        config = _single_mode()
        x = new_state(config, [(((1,), 0), 1 / math.sqrt(2)), (((0,), 1), 1 / math.sqrt(2))])
        self.assertAlmostEqual(mode_purity(x), 0.5, places=12)


class TestSerialization(DickexTest):
    def test_dumps_layout(self):
        x = new_state(_single_mode(), [(((1,), 0), 0.6), (((0,), 1), 0.8j)])
        data = json.loads(dumps_state(x))
        self.assertEqual(data['modes'], [{'label': 'a', 'cutoff': 1}])
        self.assertEqual(data['n_atoms'], 2)
        self.assertEqual(data['atom_representation'], 'symmetric')
        self.assertNotIn('ensembles', data)
        self.assertEqual(data['amplitudes'][0], {'fock': [0], 'm': 1, 're': 0.0, 'im': 0.8})
        self.assertEqual(data['amplitudes'][1], {'fock': [1], 'm': 0, 're': 0.6, 'im': 0.0})

    def test_roundtrip_is_byte_stable(self):
        x = new_state(_single_mode(), [(((1,), 0), 1 / math.sqrt(3)), (((0,), 1), 1j * math.sqrt(2 / 3))])
        text = dumps_state(x)
        self.assertEqual(dumps_state(loads_state(text)), text)
        self.assertStateClose(loads_state(text), x, 0.0)

    def test_product_bits(self):
        config = SpaceConfig([], 3, AtomRepresentation.PRODUCT)
        x = basis_state(config, (), (0, 1, 0))
        data = state_to_dict(x)
        self.assertEqual(data['amplitudes'][0]['bits'], '010')
        self.assertStateClose(state_from_dict(data), x)

    def test_ensembles(self):
        config = SpaceConfig([ModeSpec('a', 1)], 3, ensembles=(1, 2))
        x = basis_state(config, (0,), (1, 0))
        data = state_to_dict(x)
        self.assertEqual(data['ensembles'], [1, 2])
        self.assertEqual(data['amplitudes'][0]['m'], [1, 0])
        self.assertStateClose(state_from_dict(data), x)

    def test_malformed_json(self):
        with self.assertRaises(ParseError) as context:
            loads_state('{"modes": [')
        self.assertIn('pos', context.exception.status)

    def test_missing_field(self):
        with self.assertRaises(ParseError):
            state_from_dict({'modes': [], 'n_atoms': 1})

    def test_not_an_object(self):
        with self.assertRaises(ParseError):
            loads_state('[1, 2]')

    def test_fractional_label(self):
        data = state_to_dict(basis_state(_single_mode(), (1,), 0))
        data['amplitudes'][0].update(fock=[0.9], m=1.5)
        with self.assertRaises(ParseError):
            state_from_dict(data)
        with self.assertRaises(ParseError):
            loads_state(json.dumps(data))

    def test_floats_have_17_digits(self):
        x = new_state(_single_mode(), [(((1,), 0), 0.6), (((0,), 1), 0.8j)])
        text = dumps_state(x)
        self.assertIn('"re": 0.59999999999999998', text)
        self.assertIn('"im": 0.0', text)
        self.assertIn('"m": 1,', text)

    def test_label_outside_config(self):
        data = state_to_dict(basis_state(_single_mode(), (1,), 0))
        data['amplitudes'][0]['m'] = 7
        with self.assertRaises(StateError):
            state_from_dict(data)


if __name__ == '__main__':
    unittest.main()
