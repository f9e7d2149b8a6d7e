# -*- coding: utf-8 -*-
'''
Brute-force ground truth for the closed-form evolutions.

Hamiltonians are assembled as dense matrices over an explicitly enumerated
basis, from truncated boson ladder matrices and either per-atom s10/s01
sums (product representation) or collective Dicke ladder matrices
(symmetric representation).  Every Hamiltonian is written H/hbar = i(X - X^+)
with X the forward process:

    one_photon    X = g a S10
    raman         X = f c^+ b S10        (modes ordered c, b)
    m_photon      X = g a^M S10
    three_photon  X = f a^+ b c          (modes ordered a, b, c; no atoms)

Evolution diagonalizes H once and applies exp(-i E t) in its eigenbasis.
'''

import enum
import functools
import logging
import math
import os
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from dickex.dicke import ladder_raise_coefficient, product_expansion
from dickex.exception import ConfigError, GuardError, LeakageError, StateError
from dickex.hilbert import AtomRepresentation, BasisLabel, SpaceConfig, StateVector

logger = logging.getLogger(__name__)

DEFAULT_MAX_DIM = 4096
MAX_EMBED_ATOMS = 12
HERMITIAN_TOLERANCE = 1e-12
UNITARITY_TOLERANCE = 1e-11


class InteractionKind(enum.Enum):
    ONE_PHOTON = 'one_photon'
    RAMAN = 'raman'
    M_PHOTON = 'm_photon'
    THREE_PHOTON = 'three_photon'


_MODE_COUNT = {
    InteractionKind.ONE_PHOTON: 1,
    InteractionKind.RAMAN: 2,
    InteractionKind.M_PHOTON: 1,
    InteractionKind.THREE_PHOTON: 3,
}


def max_dimension():
    '''
    Dense dimension guard, overridable through DICKE_MAX_DIM.
    '''

    raw = os.environ.get('DICKE_MAX_DIM')
    if raw is None:
        return DEFAULT_MAX_DIM
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f'DICKE_MAX_DIM must be an integer (got {raw!r})')
    if value < 1:
        raise ConfigError(f'DICKE_MAX_DIM must be positive (got {value})')
    return value


@dataclass(frozen=True)
class HamiltonianSpec:
    '''
    Which interaction, its coupling, the modes it acts on and the atoms.

    `order` is the photon number M of the M-photon interaction.  With the
    product representation, `active_atoms` restricts the coupling to a
    subset of the atoms (the others are spectators); `None` couples all.
    '''

    kind: InteractionKind
    coupling: float
    modes: tuple
    n_atoms: int = 0
    representation: AtomRepresentation = AtomRepresentation.SYMMETRIC
    order: int = 1
    active_atoms: tuple = None

    def __post_init__(self):
        try:
            kind = InteractionKind(self.kind)
        except ValueError:
            raise StateError(f'Unknown interaction {self.kind!r}')
        representation = AtomRepresentation(self.representation)
        modes = tuple(self.modes)
        if not math.isfinite(self.coupling):
            raise StateError(f'Coupling must be finite (got {self.coupling!r})')
        if len(modes) != _MODE_COUNT[kind]:
            raise StateError(f'{kind.value} needs {_MODE_COUNT[kind]} modes (got {len(modes)})')
        if kind is InteractionKind.THREE_PHOTON:
            if self.n_atoms != 0:
                raise StateError('three_photon acts on field modes only (n_atoms must be 0)')
        elif self.n_atoms < 1:
            raise StateError(f'{kind.value} needs at least one atom')
        if kind is InteractionKind.M_PHOTON:
            if self.order < 1:
                raise StateError(f'M-photon order must be at least 1 (got {self.order})')
        elif self.order != 1:
            raise StateError(f'Photon order applies to m_photon only (got {self.order})')

        active = self.active_atoms
        if active is not None:
            if representation is not AtomRepresentation.PRODUCT:
                raise StateError('active_atoms needs the product representation')
            active = tuple(sorted(set(active)))
            if any(not 0 <= atom < self.n_atoms for atom in active):
                raise StateError(f'active_atoms {active} outside 0..{self.n_atoms - 1}')

        object.__setattr__(self, 'kind', kind)
        object.__setattr__(self, 'representation', representation)
        object.__setattr__(self, 'modes', modes)
        object.__setattr__(self, 'active_atoms', active)

    @property
    def space(self):
        return SpaceConfig(self.modes, self.n_atoms, self.representation)

    @property
    def coupled_atoms(self):
        if self.active_atoms is not None:
            return self.active_atoms
        return tuple(range(self.n_atoms))


def _lowering(cutoff):
    return np.diag(np.sqrt(np.arange(1, cutoff + 1, dtype=float)), k=1)


def _atomic_raising(spec):
    N = spec.n_atoms
    if spec.representation is AtomRepresentation.SYMMETRIC:
        return np.diag([ladder_raise_coefficient(m, N) for m in range(N)], k=-1).astype(complex)

    single = np.array([[0.0, 0.0], [1.0, 0.0]])
    identity = np.eye(2)
    total = np.zeros((2 ** N, 2 ** N))
    for atom in spec.coupled_atoms:
        factors = [single if k == atom else identity for k in range(N)]
        total += functools.reduce(np.kron, factors, np.eye(1))
    return total.astype(complex)


def _forward_process(spec):
    '''
    The matrix X with H/hbar = i(X - X^+).
    '''

    lowering = [_lowering(mode.cutoff) for mode in spec.modes]
    coupling = spec.coupling
    kind = spec.kind
    if kind is InteractionKind.ONE_PHOTON:
        factors = [lowering[0], _atomic_raising(spec)]
    elif kind is InteractionKind.RAMAN:
        factors = [lowering[0].T, lowering[1], _atomic_raising(spec)]
    elif kind is InteractionKind.M_PHOTON:
        factors = [np.linalg.matrix_power(lowering[0], spec.order), _atomic_raising(spec)]
    else:
        atoms = np.eye(spec.space.atom_dimension)
        factors = [lowering[0].T, lowering[1], lowering[2], atoms]
    return coupling * functools.reduce(np.kron, factors)


class DenseOperator(object):
    '''
    Hermitian matrix over an explicitly enumerated basis.  The basis order
    is the lexicographic label order of its SpaceConfig, which is also the
    row-major order of the Kronecker products used to build it.

    The eigensystem is computed on first use and kept.
    '''

    def __init__(self, config, entries, spec=None):
        self._config = config
        self._basis = tuple(config.labels())
        self._index = {label: row for row, label in enumerate(self._basis)}
        self._entries = np.array(entries, dtype=complex)
        self._entries.setflags(write=False)
        self._spec = spec
        self._eigensystem = None

        if self._entries.shape != (len(self._basis), len(self._basis)):
            raise StateError(f'Matrix shape {self._entries.shape} does not match '
                    f'basis size {len(self._basis)}')
        defect = self.hermiticity_defect
        if defect > HERMITIAN_TOLERANCE:
            raise StateError(f'Operator is not Hermitian (defect {defect:.3g})')

    @property
    def config(self):
        return self._config

    @property
    def basis(self):
        return self._basis

    @property
    def entries(self):
        return self._entries

    @property
    def spec(self):
        return self._spec

    @property
    def dimension(self):
        return len(self._basis)

    def index(self, label):
        return self._index[label]

    @property
    def hermiticity_defect(self):
        '''
        Largest element of |H - H^+|.
        '''

        if self.dimension == 0:
            return 0.0
        return float(np.max(np.abs(self._entries - self._entries.conj().T)))

    def eigensystem(self):
        if self._eigensystem is None:
            logger.debug('Diagonalizing operator of dimension %d', self.dimension)
            self._eigensystem = scipy.linalg.eigh(self._entries)
        return self._eigensystem

    def reconstruction_error(self):
        '''
        Largest element of |V diag(E) V^+ - H|.
        '''

        energies, vectors = self.eigensystem()
        rebuilt = (vectors * energies) @ vectors.conj().T
        return float(np.max(np.abs(rebuilt - self._entries)))

    def apply(self, x):
        return from_array(self._config, self._basis, self._entries @ to_array(self, x), x.leaked)


def to_array(operator, x):
    '''
    Dense amplitude vector of `x` in the operator's basis order.
    '''

    vector = np.zeros(operator.dimension, dtype=complex)
    for label, amp in x.amplitudes.items():
        vector[operator.index(label)] = amp
    return vector


def from_array(config, basis, vector, leaked=False):
    return StateVector(config, {label: amp for label, amp in zip(basis, vector)}, leaked)


def build_hamiltonian(spec):
    '''
    Dense H/hbar for `spec`.
    '''

    config = spec.space
    limit = max_dimension()
    if config.dimension > limit:
        raise GuardError(f'Dimension {config.dimension} of {spec.kind.value} is over the '
                f'guard {limit} (set DICKE_MAX_DIM to raise it)')
    forward = _forward_process(spec)
    hamiltonian = 1j * (forward - forward.conj().T)
    logger.debug('Built %s Hamiltonian of dimension %d (%s)', spec.kind.value,
            config.dimension, spec.representation.value)
    return DenseOperator(config, hamiltonian, spec)


def _coupled_excitations(spec, label):
    if spec.representation is AtomRepresentation.SYMMETRIC:
        return label.excitations
    return sum(label.atom_part[atom] for atom in spec.coupled_atoms)


def conserved_charges(spec, label):
    '''
    Excitation numbers conserved by `spec` on the basis vector `label`.
    '''

    fock = label.fock
    kind = spec.kind
    if kind is InteractionKind.THREE_PHOTON:
        return (fock[0] + fock[1], fock[0] + fock[2])
    m = _coupled_excitations(spec, label)
    if kind is InteractionKind.ONE_PHOTON:
        return (fock[0] + m,)
    if kind is InteractionKind.RAMAN:
        n_c, n_b = fock
        return (n_b + m, n_b + n_c)
    return (fock[0] + spec.order * m,)


def conserved_expectations(spec, x):
    '''
    Expectation value of each conserved charge in the state `x`.
    '''

    totals = None
    for label, amp in x.amplitudes.items():
        weight = abs(amp) ** 2
        charges = conserved_charges(spec, label)
        if totals is None:
            totals = [0.0] * len(charges)
        for position, charge in enumerate(charges):
            totals[position] += weight * charge
    return tuple(totals or ())


def max_reachable_occupation(spec, label):
    '''
    Largest occupation of each mode in the conserved-charge sector of `label`.
    '''

    charges = conserved_charges(spec, label)
    kind = spec.kind
    if kind is InteractionKind.THREE_PHOTON:
        along_b, along_c = charges
        return (min(along_b, along_c), along_b, along_c)
    if kind is InteractionKind.RAMAN:
        atomic, photonic = charges
        fewest_b = max(0, atomic - len(spec.coupled_atoms))
        return (photonic - fewest_b, min(atomic, photonic))
    return charges


def check_leakage(spec, x):
    '''
    Raises LeakageError if the sector of any label in the support of `x`
    reaches past a mode cutoff.
    '''

    for label in x.amplitudes:
        for mode, bound in zip(spec.modes, max_reachable_occupation(spec, label)):
            if bound > mode.cutoff:
                raise LeakageError(mode.label, bound, mode.cutoff,
                        f'Label {label} reaches occupation {bound} of mode {mode.label} '
                        f'(cutoff {mode.cutoff})')


def evolve_exact(hamiltonian, x, t):
    '''
    Returns exp(-i H t) x.
    '''

    if x.config != hamiltonian.config:
        raise StateError(f'State basis {x.config} does not match the operator basis')
    if hamiltonian.spec is not None:
        check_leakage(hamiltonian.spec, x)
    energies, vectors = hamiltonian.eigensystem()
    initial = to_array(hamiltonian, x)
    evolved = vectors @ (np.exp(-1j * energies * t) * (vectors.conj().T @ initial))
    drift = abs(np.linalg.norm(evolved) - np.linalg.norm(initial))
    if drift > UNITARITY_TOLERANCE:
        logger.warning('Norm drift %.3g at t=%r exceeds %.0e', drift, t, UNITARITY_TOLERANCE)
    return from_array(hamiltonian.config, hamiltonian.basis, evolved, x.leaked)


def compare_states(x, y, align_phase=True):
    '''
    Largest |amp_x - amp_y| over all labels, after rotating `y` by the global
    phase that aligns it with `x` on the largest-magnitude amplitude of `x`
    (ties go to the first label in basis order).
    '''

    if x.config != y.config:
        raise StateError(f'Configuration mismatch: {x.config} != {y.config}')
    phase = 1.0
    if align_phase and len(x):
        reference, reference_amp = max(x.items(), key=lambda item: abs(item[1]))
        other = y.amplitude(reference)
        if abs(other) > 0.0:
            phase = (reference_amp / abs(reference_amp)) * (other / abs(other)).conjugate()
    labels = set(x.amplitudes) | set(y.amplitudes)
    return max((abs(x.amplitude(label) - phase * y.amplitude(label)) for label in labels),
            default=0.0)


def embed_symmetric(x):
    '''
    Writes a symmetric-sector state in the full product space by extending
    |m> -> expand_to_product(m, N) linearly (per ensemble when there are
    several).
    '''

    config = x.config
    if not config.symmetric:
        raise StateError('embed_symmetric needs a symmetric-sector state')
    if config.n_atoms > MAX_EMBED_ATOMS:
        raise GuardError(f'Atom count {config.n_atoms} is over the embedding guard {MAX_EMBED_ATOMS}')

    expansions = {}

    def expansion(atom_part):
        if atom_part not in expansions:
            parts = atom_part if config.multi_ensemble else (atom_part,)
            combined = {(): 1.0}
            for m, size in zip(parts, config.ensembles):
                block = product_expansion(m, size)
                combined = {head + bits: amp * weight
                        for head, amp in combined.items() for bits, weight in block.items()}
            expansions[atom_part] = combined
        return expansions[atom_part]

    result = {}
    for label, amp in x.amplitudes.items():
        for bits, weight in expansion(label.atom_part).items():
            target = BasisLabel(label.fock, bits)
            result[target] = result.get(target, 0j) + weight * amp
    product = SpaceConfig(config.modes, config.n_atoms, AtomRepresentation.PRODUCT)
    return StateVector(product, result, x.leaked)
