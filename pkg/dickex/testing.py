# -*- coding: utf-8 -*-
'''
Support library for unit-tests
'''

import unittest

from dickex.hilbert import as_label, norm


class DickexTest(unittest.TestCase):
    def setUp(self):
        self.maxDiff = None  # show everything on failure
        super().setUp()

    def assertComplexClose(self, actual, expected, tolerance=1e-12, msg=None):
        deviation = abs(complex(actual) - complex(expected))
        if deviation > tolerance:
            raise self.failureException(msg or
                    f'Complex values differ by {deviation:.3g}: {actual!r} != {expected!r}')

    def assertAmplitude(self, state, label, expected, tolerance=1e-12):
        actual = state.amplitude(label)
        self.assertComplexClose(actual, expected, tolerance,
                f'Amplitude of {as_label(label)} is not expected value: {actual!r} != {expected!r}')

    def assertNormalized(self, state, tolerance=1e-12):
        size = norm(state)
        if abs(size - 1.0) > tolerance:
            raise self.failureException(f'State is not normalized: norm {size!r}')

    def assertStateClose(self, actual, expected, tolerance=1e-12):
        if actual.config != expected.config:
            raise self.failureException(
                    f'State configurations differ: {actual.config} != {expected.config}')
        labels = set(actual.amplitudes) | set(expected.amplitudes)
        for label in sorted(labels):
            deviation = abs(actual.amplitude(label) - expected.amplitude(label))
            if deviation > tolerance:
                raise self.failureException(
                        f'Amplitude of {label} differs by {deviation:.3g}: '
                        f'{actual.amplitude(label)!r} != {expected.amplitude(label)!r}')
