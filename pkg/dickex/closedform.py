# -*- coding: utf-8 -*-
'''
Closed-form evolutions of atoms and few-photon fields.

Every solvable case here is a rotation inside a two-dimensional invariant
subspace (an invariant pair).  Amplitudes refer to the normalized Dicke
basis; `unnormalized_one_photon_coefficients` and
`unnormalized_raman_coefficients` give the same rotations on the
unnormalized |m;N> kets.

The general theorem covers Hamiltonians H = i hbar (pi^+ h - pi h^+) with
pi commuting with h and h^+.  `pair_coefficients` measures its constants
A, B, lam and lam' by applying the operators to the supplied states, and
`general_pair_evolution` evolves the pair:

>>> amps = general_pair_evolution(1.0, 0.0, 1.0, 1.0, 4.0, 0.0, math.pi / 4)
>>> round(abs(amps.phi), 12), round(abs(amps.raised), 12)
(0.0, 1.0)
'''

import collections
import logging
import math
from dataclasses import dataclass

from dickex.dicke import (DickeIndex, apply_product_S01, apply_product_S10, apply_S01,
        apply_S10, dicke_norm_sq, ladder_lower_coefficient, ladder_raise_coefficient)
from dickex.exception import CoefficientError, SectorError, StateError
from dickex.hilbert import (LOWER, RAISE, AtomRepresentation, BasisLabel, ModeSpec,
        SpaceConfig, StateVector, apply_boson, apply_boson_power, basis_state, inner,
        is_normalized, norm)
from dickex.oracle import HamiltonianSpec, InteractionKind

logger = logging.getLogger(__name__)

RESIDUAL_TOLERANCE = 1e-10
UNIT_TOLERANCE = 1e-12


@dataclass(frozen=True)
class CouplingParams:
    '''
    Coupling constant (g or f, inverse time) and evolution time.
    '''

    coupling: float
    t: float

    def __post_init__(self):
        if not (math.isfinite(self.coupling) and math.isfinite(self.t)):
            raise StateError(f'Coupling and time must be finite (got {self.coupling!r}, {self.t!r})')

    @property
    def angle(self):
        return self.coupling * self.t

    def reversed(self):
        return CouplingParams(self.coupling, -self.t)

    def after(self, t):
        return CouplingParams(self.coupling, self.t + t)


def _rotate(c, e, angle):
    cos, sin = math.cos(angle), math.sin(angle)
    return c * cos - e * sin, c * sin + e * cos


def _require_unit(*amplitudes):
    weight = math.fsum(abs(amp) ** 2 for amp in amplitudes)
    if abs(weight - 1.0) > UNIT_TOLERANCE:
        raise StateError(f'Amplitudes must be normalized (squared norm {weight!r})')


@dataclass(frozen=True)
class PairSpec:
    '''
    Invariant pair: two orthonormal states exchanging amplitude at the
    angular frequency `omega`.
    '''

    phi: StateVector
    phi_partner: StateVector
    omega: float

    def __post_init__(self):
        if self.phi.config != self.phi_partner.config:
            raise StateError('Pair states must share one configuration')
        for state in (self.phi, self.phi_partner):
            if not is_normalized(state):
                raise StateError(f'Pair states must be normalized (norm {norm(state)!r})')
        overlap = abs(inner(self.phi, self.phi_partner))
        if overlap > UNIT_TOLERANCE:
            raise StateError(f'Pair states must be orthogonal (overlap {overlap:.3g})')

    @property
    def config(self):
        return self.phi.config

    def state(self, c, e):
        return c * self.phi + e * self.phi_partner

    def amplitudes(self, x):
        return inner(self.phi, x), inner(self.phi_partner, x)

    def rotate(self, c, e, t):
        return _rotate(c, e, self.omega * t)


def evolve_pair_state(pair, x, t):
    '''
    Rotates the component of `x` inside `pair` and leaves the rest of `x`
    unchanged.  The caller guarantees that the rest is stationary.
    '''

    c, e = pair.amplitudes(x)
    rest = x - pair.state(c, e)
    return rest + pair.state(*pair.rotate(c, e, t))


# one-photon interaction

def one_photon_config(N, cutoff=1, ensembles=None):
    return SpaceConfig((ModeSpec('a', cutoff),), N, AtomRepresentation.SYMMETRIC, ensembles)


def one_photon_pair(N, g, cutoff=1):
    '''
    The pair |1>|0> , |0>|W> of the one-photon interaction.
    '''

    config = one_photon_config(N, cutoff)
    return PairSpec(basis_state(config, (1,), 0), basis_state(config, (0,), 1), g * math.sqrt(N))


def evolve_one_photon(c0, c1, N, params):
    '''
    Rotates (c0, c1) on (|1>|0>, |0>|W>) by theta = g t sqrt(N).
    '''

    if N < 1:
        raise StateError(f'One-photon exchange needs at least one atom (got {N})')
    _require_unit(c0, c1)
    return _rotate(c0, c1, params.angle * math.sqrt(N))


def unnormalized_one_photon_coefficients(N, params):
    '''
    Coefficients of the one-photon solution on the unnormalized kets
    |1>|0;N> and |0>|1;N>: `(c, s/sqrt(N), -s*sqrt(N), c)`, the images of
    |1>|0;N> and of |0>|1;N> in that order.
    '''

    theta = params.angle * math.sqrt(N)
    cos, sin = math.cos(theta), math.sin(theta)
    return cos, sin / math.sqrt(N), -sin * math.sqrt(N), cos


def evolve_one_photon_state(x, params, ensemble=0):
    '''
    One-photon evolution of a state with at most one excitation, photon and
    atoms counted together.  With several ensembles the field couples to
    `ensemble` only; excitations stored elsewhere are spectators.
    '''

    config = x.config
    if not config.symmetric or len(config.modes) != 1:
        raise SectorError('One-photon states need one mode and the symmetric representation')
    for label in x.amplitudes:
        if label.fock[0] + label.excitations > 1:
            raise SectorError(f'Label {label} is outside the one-excitation sector')

    size = config.ensembles[ensemble] if config.multi_ensemble else config.n_atoms
    if size == 0:
        return x
    ground = config.ground_atoms()
    if config.multi_ensemble:
        excited = ground[:ensemble] + (1,) + ground[ensemble + 1:]
    else:
        excited = 1
    photon = BasisLabel((1,), ground)
    stored = BasisLabel((0,), excited)

    c0, c1 = x.amplitude(photon), x.amplitude(stored)
    weight = math.sqrt(abs(c0) ** 2 + abs(c1) ** 2)
    if weight == 0.0:
        return x
    c0, c1 = evolve_one_photon(c0 / weight, c1 / weight, size, params)
    amplitudes = dict(x.amplitudes)
    amplitudes[photon] = weight * c0
    amplitudes[stored] = weight * c1
    return StateVector(config, amplitudes, x.leaked)


# Raman interaction

def raman_config(N, cutoffs=(1, 1)):
    '''
    Two modes ordered (c, b): |01> holds one b photon, |10> one c photon.
    '''

    modes = (ModeSpec('c', cutoffs[0]), ModeSpec('b', cutoffs[1]))
    return SpaceConfig(modes, N, AtomRepresentation.SYMMETRIC)


def raman_angles(m, N, params):
    '''
    (theta_m, theta'_m) = f t (sqrt((m+1)(N-m)), sqrt(m(N-m+1))).
    '''

    DickeIndex(m, N)
    return (params.angle * ladder_raise_coefficient(m, N),
            params.angle * ladder_lower_coefficient(m, N))


def unnormalized_raman_coefficients(m, N, params):
    '''
    Raman coefficients on the unnormalized kets: the image of
    |01>|m;N> is `cos_m |01>|m;N> + up |10>|m+1;N>` and the image of
    |10>|m;N> is `down |01>|m-1;N> + cos'_m |10>|m;N>`.  Returns
    `(cos_m, up, down, cos'_m)`; terms without a target ket are 0.
    '''

    theta, theta_prime = raman_angles(m, N, params)
    up = math.sqrt((m + 1) / (N - m)) * math.sin(theta) if m < N else 0.0
    down = -math.sqrt((N - m + 1) / m) * math.sin(theta_prime) if m > 0 else 0.0
    return math.cos(theta), up, down, math.cos(theta_prime)


_RAMAN_EMPTY = (0, 0)
_RAMAN_B = (0, 1)
_RAMAN_C = (1, 0)


def evolve_raman(x, params):
    '''
    Raman evolution in the single-photon sector.  |01>|m> and |10>|m+1>
    rotate into each other by theta_m; |00> components are stationary.
    '''

    config = x.config
    if (not config.symmetric or config.multi_ensemble or config.mode_labels != ('c', 'b')
            or min(config.cutoffs) < 1):
        raise SectorError('Raman states need modes (c, b) with cutoffs >= 1 and one '
                'symmetric ensemble')
    N = config.n_atoms
    result = {}

    def add(fock, m, amp):
        label = BasisLabel(fock, m)
        result[label] = result.get(label, 0j) + amp

    for label, amp in x.amplitudes.items():
        m = label.atom_part
        if label.fock == _RAMAN_EMPTY:
            add(label.fock, m, amp)
        elif label.fock == _RAMAN_B:
            theta, _ = raman_angles(m, N, params)
            add(_RAMAN_B, m, amp * math.cos(theta))
            if m < N:
                add(_RAMAN_C, m + 1, amp * math.sin(theta))
        elif label.fock == _RAMAN_C:
            _, theta_prime = raman_angles(m, N, params)
            add(_RAMAN_C, m, amp * math.cos(theta_prime))
            if m > 0:
                add(_RAMAN_B, m - 1, -amp * math.sin(theta_prime))
        else:
            raise SectorError(f'Photon numbers {label.fock} are outside the single-photon sector')
    return StateVector(config, result, x.leaked)


# general invariant-pair theorem

PairAmplitudes = collections.namedtuple('PairAmplitudes', 'phi raised partner lowered')
PairAmplitudes.__doc__ = '''
Evolved amplitudes of the general pair theorem.  `phi` is on Phi, `raised`
on the normalized pi^+ Phi_+ direction, `partner` on Phi_+ and `lowered` on
the normalized pi Phi direction.
'''


def _sin_ratio(rate_sq, t):
    '''
    sin(t sqrt(rate_sq)) / sqrt(rate_sq), or 0 when the branch does not move.
    '''

    if rate_sq == 0.0:
        return 0.0
    rate = math.sqrt(rate_sq)
    return math.sin(t * rate) / rate


def general_pair_evolution(c, e, A, B, lam, lam_prime, t):
    '''
    Evolves c Phi + e Phi_+ for time t.  `lam` is the eigenvalue of pi pi^+
    on the pair and `lam_prime` that of pi^+ pi.  The Phi branch moves along
    pi^+ Phi_+, the Phi_+ branch along pi Phi; a branch whose frequency is
    zero is left as it is.
    '''

    product = complex(A) * complex(B)
    report = {'A': A, 'B': B, 'lam': lam, 'lam_prime': lam_prime}
    if lam < 0 or lam_prime < 0:
        raise CoefficientError(report, f'Eigenvalues must be non-negative (lam={lam!r}, '
                f'lam_prime={lam_prime!r})')
    if abs(product.imag) > UNIT_TOLERANCE * max(1.0, abs(product)) or product.real < 0:
        raise CoefficientError(report, f'A*B must be real and non-negative (got {product!r})')
    ab = product.real

    rate_sq = lam * ab
    rate_prime_sq = lam_prime * ab
    return PairAmplitudes(
        phi=c * math.cos(t * math.sqrt(rate_sq)),
        raised=c * A * math.sqrt(lam) * _sin_ratio(rate_sq, t),
        partner=e * math.cos(t * math.sqrt(rate_prime_sq)),
        lowered=-e * B * math.sqrt(lam_prime) * _sin_ratio(rate_prime_sq, t),
    )


Factorization = collections.namedtuple('Factorization', 'h h_dag pi pi_dag padding')


def _ladders(symmetric):
    if symmetric:
        return apply_S01, apply_S10
    return apply_product_S01, apply_product_S10


def _factorize(spec, symmetric):
    '''
    Splits the interaction of `spec` as pi^+ h - pi h^+ and returns the four
    operators as functions on states, plus the extra photon headroom they
    need.
    '''

    coupling = spec.coupling
    labels = [mode.label for mode in spec.modes]
    lower, raise_ = _ladders(symmetric)
    kind = spec.kind

    if kind is InteractionKind.ONE_PHOTON:
        a, = labels

        def h(x):
            return coupling * apply_boson(x, a, LOWER)

        def h_dag(x):
            return coupling * apply_boson(x, a, RAISE)

        return Factorization(h, h_dag, lower, raise_, 1)

    if kind is InteractionKind.RAMAN:
        c, b = labels

        def h(x):
            return coupling * apply_boson(apply_boson(x, b, LOWER), c, RAISE)

        def h_dag(x):
            return coupling * apply_boson(apply_boson(x, c, LOWER), b, RAISE)

        return Factorization(h, h_dag, lower, raise_, 1)

    def scalar(x):
        return coupling * x

    if kind is InteractionKind.M_PHOTON:
        a, = labels
        order = spec.order

        def h(x):
            return raise_(apply_boson_power(x, a, LOWER, order))

        def h_dag(x):
            return lower(apply_boson_power(x, a, RAISE, order))

        return Factorization(h, h_dag, scalar, scalar, order)

    a, b, c = labels

    def h(x):
        return apply_boson(apply_boson(apply_boson(x, c, LOWER), b, LOWER), a, RAISE)

    def h_dag(x):
        return apply_boson(apply_boson(apply_boson(x, c, RAISE), b, RAISE), a, LOWER)

    return Factorization(h, h_dag, scalar, scalar, 1)


def _widen(x, padding):
    config = x.config.with_cutoffs(cutoff + padding for cutoff in x.config.cutoffs)
    return StateVector(config, x.amplitudes, x.leaked)


@dataclass(frozen=True)
class ValidityReport:
    '''
    Residual norms measured by `pair_coefficients`.

    The first four must vanish for the coefficients to exist.  The last four
    are side conditions: the strict ones (h Phi_+ = 0, h^+ Phi = 0) and the
    composite ones the dynamics needs (pi^+ h Phi_+ = 0, pi h^+ Phi = 0).
    '''

    h_phi: float
    h_dag_phi_partner: float
    pi_pi_dag: float
    pi_dag_pi: float
    h_phi_partner: float
    h_dag_phi: float
    pi_dag_h_phi_partner: float
    pi_h_dag_phi: float

    @property
    def strict_conditions_hold(self):
        return max(self.h_phi_partner, self.h_dag_phi) <= RESIDUAL_TOLERANCE

    @property
    def composite_conditions_hold(self):
        return max(self.pi_dag_h_phi_partner, self.pi_h_dag_phi) <= RESIDUAL_TOLERANCE

    def as_dict(self):
        return {name: getattr(self, name) for name in self.__dataclass_fields__}


PairCoefficients = collections.namedtuple('PairCoefficients', 'A B lam lam_prime report')


def pair_coefficients(h_spec, phi, phi_dag):
    '''
    Measures A (h Phi = A Phi_+), B (h^+ Phi_+ = B Phi) and the eigenvalues
    lam of pi pi^+ and lam' of pi^+ pi on the pair, by applying the
    operators of `h_spec` to the states.  Mode cutoffs are widened
    internally so that no operator application is truncated.
    '''

    if phi.config != phi_dag.config:
        raise StateError('Pair states must share one configuration')
    for state in (phi, phi_dag):
        if not is_normalized(state):
            raise StateError(f'Pair states must be normalized (norm {norm(state)!r})')
    if len(phi.config.modes) != len(h_spec.modes):
        raise StateError(f'{h_spec.kind.value} needs {len(h_spec.modes)} modes')

    ops = _factorize(h_spec, phi.config.symmetric)
    phi = _widen(phi, ops.padding)
    phi_dag = _widen(phi_dag, ops.padding)

    h_phi = ops.h(phi)
    A = inner(phi_dag, h_phi)
    h_dag_partner = ops.h_dag(phi_dag)
    B = inner(phi, h_dag_partner)

    def eigenvalue(first, second, state):
        image = first(second(state))
        value = inner(state, image).real
        return value, norm(image - value * state)

    lam, lam_residual = eigenvalue(ops.pi, ops.pi_dag, phi)
    lam_partner, lam_partner_residual = eigenvalue(ops.pi, ops.pi_dag, phi_dag)
    lam_prime, lam_prime_residual = eigenvalue(ops.pi_dag, ops.pi, phi_dag)
    lam_prime_phi, lam_prime_phi_residual = eigenvalue(ops.pi_dag, ops.pi, phi)

    h_phi_partner = ops.h(phi_dag)
    h_dag_phi = ops.h_dag(phi)
    report = ValidityReport(
        h_phi=norm(h_phi - A * phi_dag),
        h_dag_phi_partner=norm(h_dag_partner - B * phi),
        pi_pi_dag=max(lam_residual, lam_partner_residual, abs(lam - lam_partner)),
        pi_dag_pi=max(lam_prime_residual, lam_prime_phi_residual, abs(lam_prime - lam_prime_phi)),
        h_phi_partner=norm(h_phi_partner),
        h_dag_phi=norm(h_dag_phi),
        pi_dag_h_phi_partner=norm(ops.pi_dag(h_phi_partner)),
        pi_h_dag_phi=norm(ops.pi(h_dag_phi)),
    )
    for name in ('h_phi', 'h_dag_phi_partner', 'pi_pi_dag', 'pi_dag_pi'):
        residual = getattr(report, name)
        if residual > RESIDUAL_TOLERANCE:
            raise CoefficientError(report, f'Pair is not an eigen-direction of the '
                    f'{h_spec.kind.value} factors ({name} residual {residual:.3g})')
    if not report.strict_conditions_hold:
        logger.debug('Strict pair conditions fail for %s (h Phi_+ %.3g, h^+ Phi %.3g)',
                h_spec.kind.value, report.h_phi_partner, report.h_dag_phi)
    return PairCoefficients(A, B, lam, lam_prime, report)


# M-photon absorption

def m_photon_spec(M, p, N, g, representation=AtomRepresentation.SYMMETRIC):
    _check_m_photon(M, p, N)
    return HamiltonianSpec(InteractionKind.M_PHOTON, g, (ModeSpec('a', 2 * M - p),), N,
            representation, order=M)


def _check_m_photon(M, p, N):
    if M < 1:
        raise StateError(f'Photon order M must be at least 1 (got {M})')
    if not 1 <= p <= M:
        raise StateError(f'p must lie in 1..M={M} (got {p})')
    if N < 1:
        raise StateError(f'M-photon absorption needs at least one atom (got {N})')


def m_photon_pair(M, p, N, g):
    '''
    The pair |2M-p>|0> , |M-p>|W> with its measured rotation frequency.
    '''

    spec = m_photon_spec(M, p, N, g)
    config = spec.space
    phi = basis_state(config, (2 * M - p,), 0)
    partner = basis_state(config, (M - p,), 1)
    coefficients = pair_coefficients(spec, phi, partner)
    omega = math.sqrt(coefficients.lam * (coefficients.A * coefficients.B).real)
    return PairSpec(phi, partner, omega)


def product_a_coefficient(M, p):
    '''
    The product formula ((2M-p)(2M-p-1)...(M-p))^(1/2) taken literally.
    Its last factor is M-p, so it vanishes at p = M.
    '''

    return math.sqrt(math.prod(range(M - p, 2 * M - p + 1)))


def evolve_m_photon(M, p, N, c, e, params):
    '''
    Evolves c |2M-p>|0> + e |M-p>|W> under M-photon absorption.  The
    pair constants come from `pair_coefficients`.
    '''

    spec = m_photon_spec(M, p, N, params.coupling)
    config = spec.space
    phi = basis_state(config, (2 * M - p,), 0)
    partner = basis_state(config, (M - p,), 1)
    coefficients = pair_coefficients(spec, phi, partner)
    amps = general_pair_evolution(c, e, coefficients.A, coefficients.B, coefficients.lam,
            coefficients.lam_prime, params.t)
    # pi^+ = g, so pi^+ Phi_+ and pi Phi point along sign(g) Phi_+ and sign(g) Phi
    sign = math.copysign(1.0, params.coupling)
    return amps.phi + sign * amps.lowered, amps.partner + sign * amps.raised


# three-photon parametric interaction

def three_photon_spec(n, f):
    modes = (ModeSpec('a', 1), ModeSpec('b', 1), ModeSpec('c', n))
    return HamiltonianSpec(InteractionKind.THREE_PHOTON, f, modes, 0)


def three_photon_pair(n, f):
    '''
    The pair |0,1,n> , |1,0,n-1>.
    '''

    if n < 1:
        raise StateError(f'Three-photon pair needs n >= 1 (got {n})')
    config = three_photon_spec(n, f).space
    return PairSpec(basis_state(config, (0, 1, n), 0), basis_state(config, (1, 0, n - 1), 0),
            f * math.sqrt(n))


def evolve_three_photon(n, c, e, params):
    '''
    Rotates (c, e) on (|0,1,n>, |1,0,n-1>) by f t sqrt(n).
    '''

    if n < 1:
        raise StateError(f'Three-photon exchange needs n >= 1 (got {n})')
    _require_unit(c, e)
    return _rotate(c, e, params.angle * math.sqrt(n))


def constructive_m_photon_a(M, p, N):
    '''
    A = sqrt(N (2M-p)! / (M-p)!) for the normalized pair states.
    '''

    _check_m_photon(M, p, N)
    return math.sqrt(N * math.factorial(2 * M - p) / math.factorial(M - p))


def dicke_ratio(m, N):
    '''
    C(N,m) / C(N,m+1) = (m+1)/(N-m): the factor that maps the normalized
    Raman amplitude sin(theta_m) onto the unnormalized-ket one.
    '''

    return dicke_norm_sq(N, m) / dicke_norm_sq(N, m + 1)
