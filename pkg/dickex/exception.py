# -*- coding: utf-8 -*-
'''
Exception classes for dickex states, evolutions and protocols.
'''


class DickexError(Exception):
    '''
    Base error type for everything raised by the dickex package.
    '''
    pass


class StateError(DickexError):
    '''
    Error for malformed states: labels outside their cutoffs, duplicate
    labels, mismatched configurations, zero or unnormalized vectors.
    '''
    pass


class SectorError(DickexError):
    '''
    Error for a state handed to an operation that does not cover its
    representation or excitation sector.
    '''
    pass


class GuardError(DickexError):
    '''
    Error for sizes beyond a declared guard (atom count or dense dimension).
    '''
    pass


class LeakageError(DickexError):
    '''
    Error for an oracle evolution whose conserved charges reach past a
    mode cutoff.  The offending mode and bound are kept on the instance.
    '''
    def __init__(self, mode, bound, cutoff, *args, **kwargs):
        super(LeakageError, self).__init__(*args, **kwargs)
        self.mode = mode
        self.bound = bound
        self.cutoff = cutoff


class CoefficientError(DickexError):
    '''
    Error type for invariant-pair coefficients that cannot be formed.

    See the `report` attribute for the residuals measured before the failure.
    '''
    def __init__(self, report, *args, **kwargs):
        super(CoefficientError, self).__init__(*args, **kwargs)
        self.report = report


class ProtocolError(DickexError):
    '''
    Error for protocol arguments with no admissible schedule.
    '''
    pass


class ParseError(DickexError):
    '''
    Error type for malformed ket text or state files.

    The `status` attribute holds the reader position and state at the
    point of failure, when known.
    '''
    def __init__(self, *args, status=None, **kwargs):
        super(ParseError, self).__init__(*args, **kwargs)
        self.status = status or {}


class ConfigError(DickexError):
    '''
    Error for an incomplete or inconsistent command-line run configuration.
    '''
    pass
