# -*- coding: utf-8 -*-
'''
Symmetric Dicke sector algebra.

States in the symmetric representation use the NORMALIZED Dicke basis
|m> = |m;N> / sqrt(C(N,m)), where |m;N> is the unnormalized sum over the
C(N,m) distinguishable placements of m excitations.  In that basis the
collective ladder operators act as

    S10 |m> = sqrt((m+1)(N-m)) |m+1>
    S01 |m> = sqrt(m(N-m+1))   |m-1>

>>> dicke_norm_sq(4, 1)
4
>>> ladder_raise_coefficient(0, 4)
2.0
'''

import itertools
import logging
import math
from dataclasses import dataclass

from scipy.special import comb

from dickex.exception import GuardError, SectorError, StateError
from dickex.hilbert import AtomRepresentation, BasisLabel, SpaceConfig, StateVector

logger = logging.getLogger(__name__)

# exact binomials are computed up to this atom count
MAX_BINOMIAL_ATOMS = 60
# 2^N enumeration is an oracle-scale tool only
MAX_EXPANSION_ATOMS = 20


@dataclass(frozen=True)
class DickeIndex:
    '''
    Excitation count `m` of an ensemble of `N` atoms.
    '''

    m: int
    N: int

    def __post_init__(self):
        if self.N < 0 or not 0 <= self.m <= self.N:
            raise StateError(f'Dicke index m={self.m} is outside 0..N for N={self.N}')


def dicke_norm_sq(N, m):
    '''
    Squared norm <m;N|m;N> = C(N,m) of the unnormalized Dicke vector, as an
    exact integer.
    '''

    DickeIndex(m, N)
    if N > MAX_BINOMIAL_ATOMS:
        raise GuardError(f'Atom count {N} is over the binomial guard {MAX_BINOMIAL_ATOMS}')
    return int(comb(N, m, exact=True))


def ladder_raise_coefficient(m, N):
    return math.sqrt((m + 1) * (N - m))


def ladder_lower_coefficient(m, N):
    return math.sqrt(m * (N - m + 1))


def to_unnormalized_amplitude(amp, m, N):
    '''
    Coefficient on the unnormalized |m;N> equivalent to `amp` on |m>.
    '''

    return amp / math.sqrt(dicke_norm_sq(N, m))


def from_unnormalized_amplitude(coefficient, m, N):
    return coefficient * math.sqrt(dicke_norm_sq(N, m))


def _collective(x, step, ensemble):
    config = x.config
    if not config.symmetric:
        raise SectorError('Collective ladder operators need the symmetric representation; '
                'use apply_product_S10/apply_product_S01 or project_to_sector first')

    if config.multi_ensemble:
        if ensemble is None:
            targets = range(len(config.ensembles))
        elif 0 <= ensemble < len(config.ensembles):
            targets = (ensemble,)
        else:
            raise StateError(f'Unknown ensemble {ensemble} (have {len(config.ensembles)})')
    elif ensemble in (None, 0):
        targets = (None,)
    else:
        raise StateError(f'Unknown ensemble {ensemble} (configuration has one ensemble)')

    coefficient_fn = ladder_raise_coefficient if step > 0 else ladder_lower_coefficient
    result = {}
    for label, amp in x.amplitudes.items():
        for target in targets:
            if target is None:
                m, size = label.atom_part, config.n_atoms
            else:
                m, size = label.atom_part[target], config.ensembles[target]
            coefficient = coefficient_fn(m, size)
            if coefficient == 0.0:
                continue
            if target is None:
                atom_part = m + step
            else:
                atom_part = label.atom_part[:target] + (m + step,) + label.atom_part[target + 1:]
            shifted = BasisLabel(label.fock, atom_part)
            result[shifted] = result.get(shifted, 0j) + coefficient * amp
    return StateVector(config, result, x.leaked)


def apply_S10(x, ensemble=None):
    '''
    Collective raising operator on a symmetric-sector state.  With several
    ensembles, `ensemble` selects one of them; `None` applies the summed
    operator over all ensembles.
    '''

    return _collective(x, 1, ensemble)


def apply_S01(x, ensemble=None):
    '''
    Collective lowering operator; see `apply_S10`.
    '''

    return _collective(x, -1, ensemble)


def _per_atom(x, source, target):
    if x.config.symmetric:
        raise SectorError('Per-atom ladder sums need the product representation')
    result = {}
    for label, amp in x.amplitudes.items():
        bits = label.atom_part
        for position, bit in enumerate(bits):
            if bit != source:
                continue
            flipped = BasisLabel(label.fock, bits[:position] + (target,) + bits[position + 1:])
            result[flipped] = result.get(flipped, 0j) + amp
    return StateVector(x.config, result, x.leaked)


def apply_product_S10(x):
    '''
    Sum of single-atom raising operators s10(a) over all atoms of a
    product-representation state.
    '''

    return _per_atom(x, 0, 1)


def apply_product_S01(x):
    return _per_atom(x, 1, 0)


def product_expansion(m, N):
    '''
    Returns `{bits: amplitude}` for the normalized |m> over the 2^N product
    basis.
    '''

    DickeIndex(m, N)
    if N > MAX_EXPANSION_ATOMS:
        raise GuardError(f'Atom count {N} is over the expansion guard {MAX_EXPANSION_ATOMS}')
    amp = 1.0 / math.sqrt(dicke_norm_sq(N, m))
    expansion = {}
    for excited in itertools.combinations(range(N), m):
        bits = [0] * N
        for position in excited:
            bits[position] = 1
        expansion[tuple(bits)] = amp
    return expansion


def expand_to_product(m, N):
    '''
    The normalized Dicke state |m> written in the full product space of N
    atoms (no field modes).

    >>> w = expand_to_product(1, 3)
    >>> sorted(w.amplitudes) == [BasisLabel((), bits) for bits in ((0, 0, 1), (0, 1, 0), (1, 0, 0))]
    True
    '''

    config = SpaceConfig((), N, AtomRepresentation.PRODUCT)
    return StateVector(config, {
        BasisLabel((), bits): amp for bits, amp in product_expansion(m, N).items()})


def project_to_sector(x):
    '''
    Overlaps of a product-representation state with each normalized |m>,
    returned as a symmetric-sector state together with the norm of the part
    of `x` outside the symmetric sector.
    '''

    config = x.config
    if config.symmetric:
        raise SectorError('project_to_sector needs a product-representation state')
    N = config.n_atoms
    scale = [1.0 / math.sqrt(dicke_norm_sq(N, m)) for m in range(N + 1)]
    overlaps = {}
    for label, amp in x.amplitudes.items():
        m = label.excitations
        projected = BasisLabel(label.fock, m)
        overlaps[projected] = overlaps.get(projected, 0j) + scale[m] * amp
    # residual measured term by term, not as a difference of squared norms
    residual_sq = 0.0
    present = {}
    for label, amp in x.amplitudes.items():
        m = label.excitations
        key = BasisLabel(label.fock, m)
        present[key] = present.get(key, 0) + 1
        residual_sq += abs(amp - scale[m] * overlaps[key]) ** 2
    for key, overlap in overlaps.items():
        missing = dicke_norm_sq(N, key.atom_part) - present[key]
        residual_sq += missing * abs(scale[key.atom_part] * overlap) ** 2

    sector = SpaceConfig(config.modes, N, AtomRepresentation.SYMMETRIC)
    return StateVector(sector, overlaps, x.leaked), math.sqrt(residual_sq)
