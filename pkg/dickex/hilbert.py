# -*- coding: utf-8 -*-
'''
Pure states over a tensor product of truncated boson modes and an atomic
index.  The atomic index is either the collective Dicke excitation count
`m` of one or more symmetric ensembles, or the full bitstring of N atoms.

States are sparse maps from `BasisLabel` to complex amplitude, and every
operation returns a new state:

>>> config = SpaceConfig([ModeSpec('a', 1)], 2)
>>> x = new_state(config, [(((1,), 0), 1.0)])
>>> y = apply_boson(x, 'a', LOWER)
>>> y.amplitude(((0,), 0))
(1+0j)
>>> norm(apply_boson(y, 'a', RAISE))
1.0
'''

import enum
import itertools
import json
import logging
import math
import re
from dataclasses import dataclass
from types import MappingProxyType

import numpy as np

from dickex.exception import ParseError, StateError

logger = logging.getLogger(__name__)

# amplitudes below this after arithmetic are dropped from the sparse map
AMPLITUDE_FLOOR = 1e-14
NORM_TOLERANCE = 1e-12

LOWER = 'lower'
RAISE = 'raise'


class AtomRepresentation(enum.Enum):
    '''
    How the atomic factor of a basis label is written.
    '''

    SYMMETRIC = 'symmetric'
    PRODUCT = 'product'


def _as_count(value, what):
    try:
        count = int(value)
    except (TypeError, ValueError):
        raise StateError(f'{what} must be an integer (got {value!r})')
    if count != value or count < 0:
        raise StateError(f'{what} must be a non-negative integer (got {value!r})')
    return count


def _as_index(value, what):
    try:
        index = int(value)
    except (TypeError, ValueError, OverflowError):
        index = None
    if index is None or index != value:
        raise StateError(f'{what} must be an integer (got {value!r})')
    return index


@dataclass(frozen=True)
class ModeSpec:
    '''
    A boson mode truncated at `cutoff` photons.
    '''

    label: str
    cutoff: int

    def __post_init__(self):
        if not isinstance(self.label, str) or not self.label:
            raise StateError(f'Mode label must be a non-empty string (got {self.label!r})')
        object.__setattr__(self, 'cutoff', _as_count(self.cutoff, f'Cutoff of mode {self.label}'))

    @property
    def dimension(self):
        return self.cutoff + 1


@dataclass(frozen=True)
class SpaceConfig:
    '''
    Declares the modes and the atoms a state lives on.

    With the symmetric representation the atoms may be split into several
    ensembles (`ensembles` is a partition of `n_atoms`); the atomic part of a
    label is then the tuple of per-ensemble excitation counts.  With a single
    ensemble it is the plain integer `m`.  With the product representation it
    is a tuple of N bits.
    '''

    modes: tuple = ()
    n_atoms: int = 0
    atom_representation: AtomRepresentation = AtomRepresentation.SYMMETRIC
    ensembles: tuple = None

    def __post_init__(self):
        modes = tuple(self.modes)
        for mode in modes:
            if not isinstance(mode, ModeSpec):
                raise StateError(f'Modes must be ModeSpec instances (got {mode!r})')
        labels = [mode.label for mode in modes]
        if len(set(labels)) != len(labels):
            raise StateError(f'Mode labels must be unique (got {labels})')
        n_atoms = _as_count(self.n_atoms, 'Atom count')
        try:
            representation = AtomRepresentation(self.atom_representation)
        except ValueError:
            raise StateError(f'Unknown atom representation {self.atom_representation!r}')

        if self.ensembles is None:
            ensembles = (n_atoms,)
        else:
            ensembles = tuple(_as_count(size, 'Ensemble size') for size in self.ensembles)
        if not ensembles or sum(ensembles) != n_atoms:
            raise StateError(f'Ensemble sizes {ensembles} do not partition {n_atoms} atoms')
        if representation is AtomRepresentation.PRODUCT and len(ensembles) > 1:
            raise StateError('Ensemble partitions apply to the symmetric representation only')

        object.__setattr__(self, 'modes', modes)
        object.__setattr__(self, 'n_atoms', n_atoms)
        object.__setattr__(self, 'atom_representation', representation)
        object.__setattr__(self, 'ensembles', ensembles)

    @property
    def symmetric(self):
        return self.atom_representation is AtomRepresentation.SYMMETRIC

    @property
    def multi_ensemble(self):
        return len(self.ensembles) > 1

    @property
    def mode_labels(self):
        return tuple(mode.label for mode in self.modes)

    @property
    def cutoffs(self):
        return tuple(mode.cutoff for mode in self.modes)

    def mode_index(self, mode):
        '''
        Returns the position of the mode labeled `mode`.
        '''

        for index, spec in enumerate(self.modes):
            if spec.label == mode:
                return index
        raise StateError(f'Unknown mode "{mode}" (modes are {list(self.mode_labels)})')

    @property
    def atom_dimension(self):
        if not self.symmetric:
            return 2 ** self.n_atoms
        return math.prod(size + 1 for size in self.ensembles)

    @property
    def dimension(self):
        return math.prod(mode.dimension for mode in self.modes) * self.atom_dimension

    def atom_parts(self):
        '''
        Yields every atomic index in lexicographic order.
        '''

        if not self.symmetric:
            yield from itertools.product((0, 1), repeat=self.n_atoms)
        elif self.multi_ensemble:
            yield from itertools.product(*(range(size + 1) for size in self.ensembles))
        else:
            yield from range(self.n_atoms + 1)

    def labels(self):
        '''
        Yields every basis label in lexicographic (fock, atom) order.
        '''

        atom_parts = list(self.atom_parts())
        for fock in itertools.product(*(range(mode.dimension) for mode in self.modes)):
            for atom_part in atom_parts:
                yield BasisLabel(fock, atom_part)

    def ground_atoms(self):
        '''
        The atomic index with no excitation.
        '''

        if not self.symmetric:
            return (0,) * self.n_atoms
        if self.multi_ensemble:
            return (0,) * len(self.ensembles)
        return 0

    def with_cutoffs(self, cutoffs):
        '''
        Returns a copy of this configuration with new mode cutoffs.
        '''

        modes = tuple(ModeSpec(mode.label, cutoff) for mode, cutoff in zip(self.modes, cutoffs))
        return SpaceConfig(modes, self.n_atoms, self.atom_representation, self.ensembles)

    def validate(self, label):
        '''
        Raises StateError unless `label` is a basis label of this configuration.
        '''

        if len(label.fock) != len(self.modes):
            raise StateError(f'Label {label} has {len(label.fock)} occupations '
                    f'for {len(self.modes)} modes')
        for occupation, mode in zip(label.fock, self.modes):
            if not 0 <= occupation <= mode.cutoff:
                raise StateError(f'Occupation {occupation} of mode {mode.label} '
                        f'is outside 0..{mode.cutoff}')

        atom_part = label.atom_part
        if not self.symmetric:
            if (not isinstance(atom_part, tuple) or len(atom_part) != self.n_atoms
                    or any(bit not in (0, 1) for bit in atom_part)):
                raise StateError(f'Atomic part {atom_part!r} is not a {self.n_atoms}-bit string')
        elif self.multi_ensemble:
            if not isinstance(atom_part, tuple) or len(atom_part) != len(self.ensembles):
                raise StateError(f'Atomic part {atom_part!r} does not match ensembles {self.ensembles}')
            for m, size in zip(atom_part, self.ensembles):
                if not 0 <= m <= size:
                    raise StateError(f'Excitation {m} is outside 0..{size}')
        elif isinstance(atom_part, tuple) or not 0 <= atom_part <= self.n_atoms:
            raise StateError(f'Excitation {atom_part!r} is outside 0..{self.n_atoms}')


@dataclass(frozen=True, order=True)
class BasisLabel:
    '''
    One basis vector: photon occupation per mode plus the atomic index.
    '''

    fock: tuple
    atom_part: object

    def __post_init__(self):
        object.__setattr__(self, 'fock', tuple(_as_index(n, 'Occupation') for n in self.fock))
        if isinstance(self.atom_part, (list, tuple)):
            object.__setattr__(self, 'atom_part',
                    tuple(_as_index(k, 'Atomic index') for k in self.atom_part))
        else:
            object.__setattr__(self, 'atom_part', _as_index(self.atom_part, 'Excitation'))

    @property
    def excitations(self):
        '''
        Total number of excited atoms.
        '''

        if isinstance(self.atom_part, tuple):
            return sum(self.atom_part)
        return self.atom_part

    def __str__(self):
        return f'{self.fock}:{self.atom_part}'


def as_label(value):
    '''
    Coerces a BasisLabel or a `(fock, atom_part)` pair to a BasisLabel.
    '''

    if isinstance(value, BasisLabel):
        return value
    try:
        fock, atom_part = value
    except (TypeError, ValueError):
        raise StateError(f'Cannot read a basis label from {value!r}')
    return BasisLabel(fock, atom_part)


class StateVector(object):
    '''
    Sparse pure state: a map from BasisLabel to complex amplitude over a
    declared SpaceConfig.  Instances are immutable; arithmetic returns new
    states and prunes amplitudes below AMPLITUDE_FLOOR.

    The `leaked` flag records that an operation tried to raise a mode past
    its cutoff.  It survives arithmetic.
    '''

    def __init__(self, config, amplitudes=None, leaked=False):
        self._config = config
        self._amplitudes = {
            label: complex(amp)
            for label, amp in (amplitudes or {}).items()
            if abs(amp) >= AMPLITUDE_FLOOR
        }
        self._leaked = bool(leaked)

    @property
    def config(self):
        return self._config

    @property
    def amplitudes(self):
        '''
        Read-only view of the non-zero amplitudes.
        '''

        return MappingProxyType(self._amplitudes)

    @property
    def leaked(self):
        return self._leaked

    def amplitude(self, label):
        return self._amplitudes.get(as_label(label), 0j)

    def items(self):
        '''
        Returns `(label, amplitude)` pairs in lexicographic label order.
        '''

        return sorted(self._amplitudes.items())

    def __len__(self):
        return len(self._amplitudes)

    def _check_config(self, other):
        if self._config != other.config:
            raise StateError(f'Configuration mismatch: {self._config} != {other.config}')

    def __add__(self, other):
        self._check_config(other)
        result = dict(self._amplitudes)
        for label, amp in other.amplitudes.items():
            result[label] = result.get(label, 0j) + amp
        return StateVector(self._config, result, self._leaked or other.leaked)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self * -1

    def __mul__(self, scalar):
        scalar = complex(scalar)
        return StateVector(self._config,
                {label: scalar * amp for label, amp in self._amplitudes.items()},
                self._leaked)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (1 / complex(scalar))

    def __repr__(self):
        terms = ', '.join(f'{label}: {amp:.6g}' for label, amp in self.items())
        return f'StateVector({{{terms}}}, leaked={self._leaked})'


def new_state(config, entries):
    '''
    Builds a state with exactly the given amplitudes (no normalization).
    `entries` is a sequence of `(label, amplitude)` pairs; labels may be
    BasisLabel instances or `(fock, atom_part)` pairs.
    '''

    amplitudes = {}
    for raw_label, amp in entries:
        label = as_label(raw_label)
        config.validate(label)
        if label in amplitudes:
            raise StateError(f'Duplicate basis label {label}')
        amplitudes[label] = complex(amp)
    return StateVector(config, amplitudes)


def basis_state(config, fock, atom_part):
    '''
    Returns the unit basis vector |fock> (x) |atom_part>.
    '''

    return new_state(config, [((fock, atom_part), 1.0)])


def zero_state(config):
    return StateVector(config)


def inner(x, y):
    '''
    Hermitian inner product <x|y>, conjugate-linear in `x`.
    '''

    if x.config != y.config:
        raise StateError(f'Configuration mismatch: {x.config} != {y.config}')
    small, large = (x, y) if len(x) <= len(y) else (y, x)
    total = 0j
    for label in small.amplitudes:
        total += x.amplitude(label).conjugate() * y.amplitude(label)
    return total


def norm(x):
    return math.sqrt(math.fsum(abs(amp) ** 2 for amp in x.amplitudes.values()))


def is_normalized(x, tolerance=NORM_TOLERANCE):
    return abs(norm(x) - 1.0) <= tolerance


def normalize(x):
    '''
    Returns `x / norm(x)`.  Raises StateError for the zero vector.
    '''

    size = norm(x)
    if size == 0.0:
        raise StateError('Cannot normalize the zero vector')
    return x / size


def fidelity(x, y):
    '''
    Returns |<x|y>|^2 for normalized states.
    '''

    for state in (x, y):
        if not is_normalized(state):
            raise StateError(f'Fidelity needs normalized states (norm {norm(state)!r})')
    return min(1.0, abs(inner(x, y)) ** 2)


def apply_boson(x, mode, kind):
    '''
    Applies the annihilation (`LOWER`) or creation (`RAISE`) operator of
    `mode`.  Raising past the cutoff drops that amplitude and marks the
    result as leaked.
    '''

    index = x.config.mode_index(mode)
    cutoff = x.config.modes[index].cutoff
    if kind not in (LOWER, RAISE):
        raise StateError(f'Boson operator kind must be "{LOWER}" or "{RAISE}" (got {kind!r})')

    step = -1 if kind == LOWER else 1
    leaked = x.leaked
    result = {}
    for label, amp in x.amplitudes.items():
        occupation = label.fock[index]
        target = occupation + step
        if target < 0:
            continue
        if target > cutoff:
            leaked = True
            continue
        factor = math.sqrt(occupation if kind == LOWER else occupation + 1)
        fock = label.fock[:index] + (target,) + label.fock[index + 1:]
        shifted = BasisLabel(fock, label.atom_part)
        result[shifted] = result.get(shifted, 0j) + factor * amp
    return StateVector(x.config, result, leaked)


def apply_boson_power(x, mode, kind, power):
    '''
    Applies `apply_boson` `power` times.
    '''

    for _ in range(power):
        x = apply_boson(x, mode, kind)
    return x


def populations(x):
    return {label: abs(amp) ** 2 for label, amp in x.items()}


def population(x, predicate):
    '''
    Total probability of the labels for which `predicate(label)` holds.
    '''

    return math.fsum(abs(amp) ** 2 for label, amp in x.amplitudes.items() if predicate(label))


def mode_purity(x):
    '''
    Purity Tr(rho^2) of the field state left after tracing out the atoms.
    '''

    if not is_normalized(x):
        raise StateError(f'Purity needs a normalized state (norm {norm(x)!r})')
    focks = sorted({label.fock for label in x.amplitudes})
    atoms = sorted({label.atom_part for label in x.amplitudes})
    fock_index = {fock: row for row, fock in enumerate(focks)}
    atom_index = {part: col for col, part in enumerate(atoms)}
    amplitudes = np.zeros((len(focks), len(atoms)), dtype=complex)
    for label, amp in x.amplitudes.items():
        amplitudes[fock_index[label.fock], atom_index[label.atom_part]] = amp
    rho = amplitudes @ amplitudes.conj().T
    return float(np.real(np.trace(rho @ rho)))


def _amplitude_entry(config, label, amp):
    entry = {'fock': list(label.fock)}
    if not config.symmetric:
        entry['bits'] = ''.join(str(bit) for bit in label.atom_part)
    elif config.multi_ensemble:
        entry['m'] = list(label.atom_part)
    else:
        entry['m'] = label.atom_part
    entry['re'] = amp.real
    entry['im'] = amp.imag
    return entry


def state_to_dict(x):
    '''
    Serializable form of a state, amplitudes in lexicographic label order.
    '''

    config = x.config
    data = {
        'modes': [{'label': mode.label, 'cutoff': mode.cutoff} for mode in config.modes],
        'n_atoms': config.n_atoms,
        'atom_representation': config.atom_representation.value,
    }
    if config.multi_ensemble:
        data['ensembles'] = list(config.ensembles)
    data['amplitudes'] = [_amplitude_entry(config, label, amp) for label, amp in x.items()]
    return data


def state_from_dict(data):
    '''
    Inverse of `state_to_dict`.  Raises ParseError for missing or mistyped
    fields and StateError for labels that do not fit the configuration.
    '''

    try:
        modes = [ModeSpec(mode['label'], mode['cutoff']) for mode in data['modes']]
        config = SpaceConfig(modes, data['n_atoms'], data['atom_representation'],
                data.get('ensembles'))
        entries = []
        for entry in data['amplitudes']:
            if config.symmetric:
                atom_part = entry['m']
            else:
                atom_part = tuple(int(bit) for bit in entry['bits'])
            entries.append((BasisLabel(entry['fock'], atom_part),
                    complex(entry['re'], entry['im'])))
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise ParseError(f'Malformed state data: {exc!r}') from exc
    except StateError as exc:
        raise ParseError(f'Malformed state label: {exc}') from exc
    return new_state(config, entries)


_FLOAT_MARK = '\x00float:'
_MARKED_FLOAT = re.compile(r'"\\u0000float:([^"]*)"')


def _mark_floats(value):
    if isinstance(value, float) and math.isfinite(value):
        text = '%.17g' % value
        if not any(ch in text for ch in '.en'):
            text += '.0'
        return _FLOAT_MARK + text
    if isinstance(value, dict):
        return {key: _mark_floats(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_mark_floats(item) for item in value]
    return value


def dumps_json(data):
    '''
    Indented JSON text with every finite float written to 17 significant digits.

    >>> print(dumps_json({'re': 0.1, 'm': 1, 'im': -2.0}), end='')
    {
      "re": 0.10000000000000001,
      "m": 1,
      "im": -2.0
    }
    '''

    text = json.dumps(_mark_floats(data), indent=2)
    return _MARKED_FLOAT.sub(lambda match: match.group(1), text) + '\n'


def dumps_state(x):
    return dumps_json(state_to_dict(x))


def loads_state(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f'Malformed state JSON: {exc}',
                status={'pos': exc.pos, 'line': exc.lineno, 'column': exc.colno}) from exc
    if not isinstance(data, dict):
        raise ParseError('State JSON must be an object')
    return state_from_dict(data)
