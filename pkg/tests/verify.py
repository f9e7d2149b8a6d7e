# -*- coding: utf-8 -*-

import doctest
import json
import unittest
from dickex.verify import *
from dickex.exception import *
from dickex.testing import *

import dickex.verify
doctest.testmod(dickex.verify)


class TestRunVerification(DickexTest):
    def test_three_photon(self):
        cases = run_verification(interactions=['three_photon'])
        self.assertEqual([case.case for case in cases],
                ['three_photon/n=1', 'three_photon/n=2', 'three_photon/n=3'])
        self.assertTrue(all_passed(cases))

    def test_theorem(self):
        cases = run_verification(interactions=['theorem'])
        self.assertTrue(all_passed(cases))
        names = [case.case for case in cases]
        self.assertEqual(names, sorted(names))
        one_photon = {case.case: case for case in cases}['theorem/one_photon/N=4']
        self.assertIn('composite pi h^+ Phi residual 0', one_photon.notes)
        self.assertEqual(one_photon.tolerance, CLOSED_FORM_TOLERANCE)

    def test_m_photon_notes(self):
        cases = run_verification(interactions=['m_photon'])
        self.assertEqual(len(cases), 8)
        self.assertTrue(all_passed(cases))
        for case in cases:
            self.assertIn('product formula A(p)=', case.notes)

    def test_one_photon(self):
        cases = run_verification(interactions=['one_photon'])
        self.assertEqual([case.case for case in cases],
                ['one_photon/N=1', 'one_photon/N=2', 'one_photon/N=4', 'one_photon/N=8'])
        self.assertTrue(all_passed(cases))
        self.assertTrue(all(case.tolerance == DEFAULT_TOLERANCE for case in cases))

    def test_raman_against_oracle(self):
        cases = {case.case: case for case in run_verification(interactions=['raman'])}
        self.assertEqual(len(cases), 87)
        self.assertTrue(all_passed(cases.values()))
        for N in range(1, 7):
            for m in range(N + 1):
                for kind in ('product', 'symmetric', 'sector_consistency'):
                    self.assertIn(f'raman/N={N}/m={m}/{kind}', cases)
            self.assertEqual(cases[f'raman/N={N}/unnormalized'].tolerance,
                    CLOSED_FORM_TOLERANCE)

    def test_protocols(self):
        cases = {case.case: case for case in run_verification(interactions=['protocols'])}
        self.assertTrue(all_passed(cases.values()))
        for name in ('cascade/structure', 'cascade/oracle', 'chain/sizes=1,1,1/state',
                'chain/sizes=1,3/probabilities', 'store_qubit/roundtrip',
                'store_entangled_pair/roundtrip', 'prepare_w/N=9/oracle'):
            self.assertIn(name, cases)

    def test_zero_tolerance_fails(self):
        cases = run_verification(0.0, ['one_photon'])
        self.assertFalse(all_passed(cases))
        self.assertTrue(all(case.tolerance == 0.0 for case in cases))

    def test_unknown_suite(self):
        with self.assertRaises(ConfigError):
            run_verification(interactions=['four_photon'])

    def test_bad_tolerance(self):
        with self.assertRaises(ConfigError):
            run_verification(-1.0, ['three_photon'])
        with self.assertRaises(ConfigError):
            run_verification(float('nan'), ['three_photon'])


class TestReport(DickexTest):
    def test_layout(self):
        data = json.loads(dumps_report(run_verification(interactions=['three_photon'])))
        self.assertEqual(len(data), 3)
        self.assertEqual(set(data[0]), {'case', 'max_deviation', 'tolerance', 'pass', 'notes'})
        self.assertEqual(data[0]['tolerance'], DEFAULT_TOLERANCE)
        self.assertIs(data[0]['pass'], True)

    def test_case_dict(self):
        case = VerificationCase('raman/N=1/m=0/product', 2e-10, 1e-10, False, '')
        self.assertEqual(case.to_dict()['pass'], False)
        self.assertEqual(case.to_dict()['case'], 'raman/N=1/m=0/product')


if __name__ == '__main__':
    unittest.main()
