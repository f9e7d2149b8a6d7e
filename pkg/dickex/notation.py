# -*- coding: utf-8 -*-
'''
Ket notation for states.

A state is written as a sum of terms, each an optional sign, an optional
real or parenthesized complex coefficient and a ket `|fock;atoms>`.  The
fock part lists photon numbers per mode; the atomic part is `m`, the
per-ensemble counts `m1,m2` or the bitstring `b1b2...` of a product
state.

>>> from dickex.hilbert import ModeSpec, SpaceConfig
>>> config = SpaceConfig([ModeSpec('a', 1)], 2)
>>> x = parse_state(config, '0.6|1;0> - (0+0.8j)|0;1>')
>>> x.amplitude(((0,), 1)).imag
-0.8
>>> format_label(config, BasisLabel((1,), 0))
'|1;0>'

The reader is a small regex state machine: each state holds a list of
`(expression, predicate, next_state)` rules tried in order against the
text at the current position.
'''

import logging
import re

from pragma_utils import Singleton

from dickex.exception import ParseError
from dickex.hilbert import BasisLabel, new_state, zero_state

logger = logging.getLogger(__name__)


class _EndState(Singleton):
    '''
    Representation of the reader's 'end state'.  Implemented as a singleton
    so that it compares identical across imports.
    '''
    pass


EndState = _EndState()

_NUMBER = r'(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?'
_ZERO = re.compile(r'\s*0\s*$')


def _nop(*args, **kwargs):
    pass


class KetReader(object):
    '''
    Reads ket notation into a StateVector over `config`.
    '''

    _status_keys = ['pos', 'state', 'head']

    def __init__(self, config):
        self._config = config
        self.spec = {
            'goal': [
                (r'\s*([+-])\s*', self._sign, 'coefficient'),
                (r'\s*(?=\S)', _nop, 'coefficient'),
            ],
            'coefficient': [
                (r'\(\s*([^()]*?)\s*\)\s*', self._complex, 'ket'),
                (rf'({_NUMBER})\s*', self._real, 'ket'),
                (r'(?=\|)', _nop, 'ket'),
            ],
            'ket': [
                (r'\|', _nop, 'fock'),
            ],
            'fock': [
                (r'(\d+(?:,\d+)*)?;', self._fock, 'atoms'),
            ],
            'atoms': [
                (r'([\d,]*)>', self._atoms, 'next'),
            ],
            'next': [
                (r'\s*([+-])\s*', self._sign, 'coefficient'),
                (r'\s+$', _nop, EndState),
            ],
            EndState: [],
        }
        self.reset()

    def reset(self):
        self._state = 'goal'
        self._pos = 0
        self._text = ''
        self._entries = []
        self._begin_term()

    def _begin_term(self):
        self._sign_value = 1
        self._coefficient = 1.0
        self._fock_value = ()

    def _parse_error(self, message):
        raise ParseError(f'{message} at position {self._pos}', status=self.status)

    def _sign(self, sign):
        self._sign_value = -1 if sign == '-' else 1

    def _real(self, value):
        self._coefficient = float(value)

    def _complex(self, value):
        try:
            self._coefficient = complex(value.replace(' ', ''))
        except ValueError:
            self._parse_error(f'Malformed complex coefficient "({value})"')

    def _fock(self, occupations):
        self._fock_value = tuple(int(n) for n in occupations.split(',')) if occupations else ()

    def _atoms(self, text):
        config = self._config
        try:
            if not config.symmetric:
                if not re.fullmatch(r'[01]*', text):
                    self._parse_error(f'Atomic part "{text}" is not a bitstring')
                atom_part = tuple(int(bit) for bit in text)
            elif config.multi_ensemble:
                atom_part = tuple(int(m) for m in text.split(','))
            else:
                atom_part = int(text)
        except ValueError:
            self._parse_error(f'Malformed atomic part "{text}"')
        label = BasisLabel(self._fock_value, atom_part)
        self._entries.append((label, self._sign_value * self._coefficient))
        self._begin_term()

    def parse(self, text):
        '''
        Runs the state machine over `text` and returns the state it spells.
        Raises ParseError when no rule matches or the text ends inside a
        term.
        '''

        self.reset()
        self._text = text
        if _ZERO.match(text):
            return zero_state(self._config)

        while self._pos < len(text):
            for expression, predicate, next_state in self.spec[self._state]:
                result = re.match(expression, text[self._pos:])
                if result:
                    predicate(*result.groups())
                    self._pos += result.end()
                    self._state = next_state
                    break
            else:
                self._parse_error(f'No match in state "{self._state}"')

        if self._state not in ('next', EndState):
            self._parse_error(f'Unexpected end of input in state "{self._state}"')
        logger.debug('Read %d terms', len(self._entries))
        return new_state(self._config, self._entries)

    @property
    def pos(self):
        return self._pos

    @property
    def state(self):
        return self._state

    @property
    def head(self):
        '''
        Returns the character at the current position, if any.
        '''

        return self._text[self._pos] if self._pos < len(self._text) else None

    @property
    def status(self):
        return {key: getattr(self, key) for key in self._status_keys}


def parse_state(config, text):
    return KetReader(config).parse(text)


def format_label(config, label):
    fock = ','.join(str(n) for n in label.fock)
    if not config.symmetric:
        atoms = ''.join(str(bit) for bit in label.atom_part)
    elif config.multi_ensemble:
        atoms = ','.join(str(m) for m in label.atom_part)
    else:
        atoms = str(label.atom_part)
    return f'|{fock};{atoms}>'


def _format_coefficient(amp):
    if amp.imag == 0.0:
        return '%+.17g' % amp.real
    return '+(%.17g%+.17gj)' % (amp.real, amp.imag)


def format_state(x):
    '''
    Writes `x` term by term in lexicographic label order with 17 significant
    digits, or `0` for the zero vector.
    '''

    if not len(x):
        return '0'
    return ' '.join(_format_coefficient(amp) + format_label(x.config, label)
            for label, amp in x.items())
