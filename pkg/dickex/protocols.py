# -*- coding: utf-8 -*-
'''
W-state preparation, ladder steps, quantum-memory storage, the two-ensemble
cascade and the atomic chain, each written as a schedule of closed-form
evolutions.

A schedule is a list of steps; each step switches one interaction on for a
duration.  Steps with `sense = -1` run the interaction backwards in time:

>>> result = prepare_w(4, 1.0)
>>> round(result.fidelity, 12), round(result.schedule.total_time, 12) == round(math.pi / 4, 12)
(1.0, True)
'''

import logging
import math
from dataclasses import dataclass, field

from dickex.closedform import (CouplingParams, PairSpec, evolve_one_photon_state,
        evolve_pair_state, evolve_raman, one_photon_config, raman_config)
from dickex.dicke import apply_S10, ladder_lower_coefficient, ladder_raise_coefficient
from dickex.exception import ProtocolError, SectorError, StateError
from dickex.hilbert import (AtomRepresentation, BasisLabel, ModeSpec, SpaceConfig, StateVector,
        basis_state, dumps_json, fidelity, new_state, normalize, population, state_to_dict)

logger = logging.getLogger(__name__)

ONE_PHOTON = 'one_photon'
RAMAN = 'raman'

QUARTER_TURN = math.pi / 2
UNIT_TOLERANCE = 1e-12


@dataclass(frozen=True)
class ScheduleStep:
    '''
    One interaction switched on for `duration` on the `targets` ensembles.
    '''

    interaction: str
    targets: tuple
    duration: float
    coupling: float
    sense: int = 1

    def __post_init__(self):
        if self.interaction not in _STEP_EVOLVERS:
            raise ProtocolError(f'Unknown schedule interaction {self.interaction!r}')
        if not math.isfinite(self.duration) or self.duration < 0:
            raise ProtocolError(f'Step durations must be finite and >= 0 (got {self.duration!r})')
        if self.sense not in (1, -1):
            raise ProtocolError(f'Step sense must be +1 or -1 (got {self.sense!r})')
        object.__setattr__(self, 'targets', tuple(self.targets))

    @property
    def params(self):
        return CouplingParams(self.coupling, self.sense * self.duration)

    def reversed(self):
        return ScheduleStep(self.interaction, self.targets, self.duration, self.coupling,
                -self.sense)


@dataclass(frozen=True)
class Schedule:
    steps: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, 'steps', tuple(self.steps))

    @property
    def total_time(self):
        return math.fsum(step.duration for step in self.steps)

    def reversed(self):
        '''
        The schedule that undoes this one: steps in reverse order, each run
        backwards.
        '''

        return Schedule(tuple(step.reversed() for step in reversed(self.steps)))


@dataclass(frozen=True)
class EnsembleChain:
    '''
    Ensembles of `sizes` atoms sharing one Raman field.
    '''

    sizes: tuple

    def __post_init__(self):
        sizes = tuple(self.sizes)
        if not sizes:
            raise ProtocolError('An atomic chain needs at least one ensemble')
        for size in sizes:
            if int(size) != size or size < 1:
                raise ProtocolError(f'Ensemble sizes must be positive integers (got {size!r})')
        object.__setattr__(self, 'sizes', tuple(int(size) for size in sizes))

    @property
    def total(self):
        return sum(self.sizes)

    def __len__(self):
        return len(self.sizes)


@dataclass(frozen=True)
class ProtocolResult:
    protocol: str
    params: dict
    final_state: StateVector
    schedule: Schedule
    fidelity: float
    success_probability: float = None
    roundtrip_fidelity: float = None
    initial_state: StateVector = field(default=None, repr=False, compare=False)


def _evolve_one_photon_step(x, step):
    for ensemble in step.targets:
        x = evolve_one_photon_state(x, step.params, ensemble)
    return x


def _chain_pair(config, coupling):
    ground = config.ground_atoms()
    photon = basis_state(config, (0, 1), ground)
    chain = normalize(apply_S10(basis_state(config, (1, 0), ground)))
    return PairSpec(photon, chain, coupling * math.sqrt(config.n_atoms))


def _evolve_chain(x, params):
    '''
    Raman evolution of a multi-ensemble state under the summed ladder
    operator, for states with at most one photon and one excitation.
    '''

    for label in x.amplitudes:
        if label.fock == (0, 1) and label.excitations == 0:
            continue
        if label.fock == (1, 0) and label.excitations <= 1:
            continue
        raise SectorError(f'Label {label} is outside the single-excitation chain sector')
    return evolve_pair_state(_chain_pair(x.config, params.coupling), x, params.t)


def _evolve_raman_step(x, step):
    if x.config.multi_ensemble:
        return _evolve_chain(x, step.params)
    return evolve_raman(x, step.params)


_STEP_EVOLVERS = {
    ONE_PHOTON: _evolve_one_photon_step,
    RAMAN: _evolve_raman_step,
}


def run_schedule(schedule, x):
    '''
    Applies every step of `schedule` to `x` in order.
    '''

    for step in schedule.steps:
        logger.debug('%s on %s for %r (sense %+d)', step.interaction, step.targets,
                step.duration, step.sense)
        x = _STEP_EVOLVERS[step.interaction](x, step)
    return x


def _require_positive(**values):
    for name, value in values.items():
        if not math.isfinite(value) or value <= 0:
            raise ProtocolError(f'{name} must be positive (got {value!r})')


def _require_atoms(**values):
    for name, value in values.items():
        if int(value) != value or value < 1:
            raise ProtocolError(f'{name} must be a positive integer (got {value!r})')


def _require_qubit(alpha, beta):
    weight = abs(alpha) ** 2 + abs(beta) ** 2
    if abs(weight - 1.0) > UNIT_TOLERANCE:
        raise StateError(f'Qubit amplitudes must be normalized (|alpha|^2+|beta|^2 = {weight!r})')


def w_preparation_time(N, g):
    '''
    t* = pi / (2 g sqrt(N)), the quarter period of the collective rotation.
    '''

    return QUARTER_TURN / (g * math.sqrt(N))


def prepare_w(N, g, duration=None, disentangle=False):
    '''
    Transfers a single photon into the W state of N atoms.  With
    `disentangle` the rotation runs backwards from the W state, returning
    the excitation to the field.
    '''

    _require_atoms(N=N)
    _require_positive(g=g)
    if duration is None:
        duration = w_preparation_time(N, g)
    config = one_photon_config(N)
    photon = basis_state(config, (1,), 0)
    stored = basis_state(config, (0,), 1)
    if disentangle:
        initial, target, sense = stored, photon, -1
    else:
        initial, target, sense = photon, stored, 1

    schedule = Schedule((ScheduleStep(ONE_PHOTON, (0,), duration, g, sense),))
    final = run_schedule(schedule, initial)
    score = fidelity(final, target)
    return ProtocolResult('disentangle' if disentangle else 'prepare_w',
            {'N': N, 'g': g, 'duration': duration}, final, schedule, score, score,
            initial_state=initial)


def ladder_step(m, N, f, direction, angle=QUARTER_TURN):
    '''
    Moves the ensemble from |m> to |m + direction> through the Raman
    channel: |01>|m> -> |10>|m+1> for +1 and |10>|m> -> -|01>|m-1> for -1.
    The schedule sets the pair angle to `angle`; the success probability is
    sin^2(angle).
    '''

    if direction not in (1, -1):
        raise ProtocolError(f'Ladder direction must be +1 or -1 (got {direction!r})')
    _require_atoms(N=N)
    _require_positive(f=f)
    if not 0 <= m <= N or not 0 <= m + direction <= N:
        raise ProtocolError(f'Ladder target {m + direction} is outside 0..{N}')
    if not math.isfinite(angle) or angle < 0:
        raise ProtocolError(f'Ladder angle must be finite and >= 0 (got {angle!r})')

    config = raman_config(N)
    if direction == 1:
        initial = basis_state(config, (0, 1), m)
        target = BasisLabel((1, 0), m + 1)
        rate = ladder_raise_coefficient(m, N)
    else:
        initial = basis_state(config, (1, 0), m)
        target = BasisLabel((0, 1), m - 1)
        rate = ladder_lower_coefficient(m, N)

    schedule = Schedule((ScheduleStep(RAMAN, (0,), angle / (f * rate), f),))
    final = run_schedule(schedule, initial)
    target_state = new_state(config, [(target, direction)])
    return ProtocolResult('ladder_step',
            {'m': m, 'N': N, 'f': f, 'direction': direction, 'angle': angle}, final, schedule,
            fidelity(final, target_state), population(final, lambda label: label == target),
            initial_state=initial)


def store_qubit(alpha, beta, N, g):
    '''
    Stores the optical qubit alpha|1> + beta|0> in N ground-state atoms as
    alpha W + beta |0>, and measures how well the reversed schedule brings
    it back.
    '''

    _require_qubit(alpha, beta)
    _require_atoms(N=N)
    _require_positive(g=g)
    config = one_photon_config(N)
    initial = new_state(config, [(((1,), 0), alpha), (((0,), 0), beta)])
    target = new_state(config, [(((0,), 1), alpha), (((0,), 0), beta)])

    schedule = Schedule((ScheduleStep(ONE_PHOTON, (0,), w_preparation_time(N, g), g),))
    final = run_schedule(schedule, initial)
    retrieved = run_schedule(schedule.reversed(), final)
    return ProtocolResult('store_qubit',
            {'alpha': alpha, 'beta': beta, 'N': N, 'g': g}, final, schedule,
            fidelity(final, target), population(final, lambda label: label.fock == (0,)),
            fidelity(retrieved, initial), initial_state=initial)


def store_entangled_pair(alpha, beta, N, f, angle=QUARTER_TURN):
    '''
    Stores alpha|01> + beta|10> through the Raman channel: the alpha branch
    rotates into |10> W while the beta branch is dark.  At the quarter turn
    the light factors out as |10>.
    '''

    _require_qubit(alpha, beta)
    _require_atoms(N=N)
    _require_positive(f=f)
    if not math.isfinite(angle) or angle < 0:
        raise ProtocolError(f'Storage angle must be finite and >= 0 (got {angle!r})')
    config = raman_config(N)
    initial = new_state(config, [(((0, 1), 0), alpha), (((1, 0), 0), beta)])
    target = new_state(config, [(((1, 0), 1), alpha), (((1, 0), 0), beta)])

    duration = angle / (f * math.sqrt(N))
    schedule = Schedule((ScheduleStep(RAMAN, (0,), duration, f),))
    final = run_schedule(schedule, initial)
    retrieved = run_schedule(schedule.reversed(), final)
    return ProtocolResult('store_entangled_pair',
            {'alpha': alpha, 'beta': beta, 'N': N, 'f': f, 'angle': angle}, final, schedule,
            fidelity(final, target), population(final, lambda label: label.fock == (1, 0)),
            fidelity(retrieved, initial), initial_state=initial)


def cascade_amplitudes(N1, N2, g1, g2, t1, t2):
    '''
    (c1 c2, s1, c1 s2): amplitudes on the photon, the W state of ensemble 1
    and the W state of ensemble 2 after the two cascade steps.
    '''

    theta1 = g1 * t1 * math.sqrt(N1)
    theta2 = g2 * t2 * math.sqrt(N2)
    c1, s1 = math.cos(theta1), math.sin(theta1)
    c2, s2 = math.cos(theta2), math.sin(theta2)
    return c1 * c2, s1, c1 * s2


def cascade(N1, N2, g1, g2, t1, t2):
    '''
    One photon meets ensemble 1 for t1 and then ensemble 2 for t2, leaving a
    three-partite W-class state of the field and the two ensembles.
    '''

    _require_atoms(N1=N1, N2=N2)
    _require_positive(g1=g1, g2=g2)
    config = one_photon_config(N1 + N2, ensembles=(N1, N2))
    initial = basis_state(config, (1,), (0, 0))
    schedule = Schedule((
        ScheduleStep(ONE_PHOTON, (0,), t1, g1),
        ScheduleStep(ONE_PHOTON, (1,), t2, g2),
    ))
    final = run_schedule(schedule, initial)

    photon, first, second = cascade_amplitudes(N1, N2, g1, g2, t1, t2)
    target = new_state(config, [
        (((1,), (0, 0)), photon),
        (((0,), (1, 0)), first),
        (((0,), (0, 1)), second),
    ])
    return ProtocolResult('cascade',
            {'N1': N1, 'N2': N2, 'g1': g1, 'g2': g2, 't1': t1, 't2': t2}, final, schedule,
            fidelity(final, target), population(final, lambda label: label.fock == (0,)),
            initial_state=initial)


def chain_config(chain):
    modes = (ModeSpec('c', 1), ModeSpec('b', 1))
    return SpaceConfig(modes, chain.total, AtomRepresentation.SYMMETRIC, chain.sizes)


def chain_state(chain):
    '''
    The chain state: one excitation shared by the ensembles, amplitude
    sqrt(N_x / N') on "ensemble x holds its W state", with the field in |10>.
    '''

    config = chain_config(chain)
    return normalize(apply_S10(basis_state(config, (1, 0), config.ground_atoms())))


def chain_evolution(chain, f, t, alpha=1.0, beta=0.0):
    '''
    Raman evolution of alpha|01> + beta|10> with every ensemble of `chain`
    in its ground state.  The alpha branch rotates into |10> (x) chain state
    at the angle f t sqrt(N'); the beta branch is stationary.
    '''

    if not isinstance(chain, EnsembleChain):
        chain = EnsembleChain(chain)
    _require_qubit(alpha, beta)
    _require_positive(f=f)
    config = chain_config(chain)
    ground = config.ground_atoms()
    initial = new_state(config, [(((0, 1), ground), alpha), (((1, 0), ground), beta)])
    schedule = Schedule((ScheduleStep(RAMAN, tuple(range(len(chain))), t, f),))
    final = run_schedule(schedule, initial)

    theta = f * t * math.sqrt(chain.total)
    target = (alpha * math.cos(theta) * basis_state(config, (0, 1), ground)
            + alpha * math.sin(theta) * chain_state(chain)
            + beta * basis_state(config, (1, 0), ground))
    return ProtocolResult('chain', {'sizes': list(chain.sizes), 'f': f, 't': t,
            'alpha': alpha, 'beta': beta}, final, schedule, fidelity(final, target),
            population(final, lambda label: label.excitations > 0), initial_state=initial)


def excitation_probabilities(x):
    '''
    Probability that each ensemble holds at least one excitation.
    '''

    config = x.config
    if not config.symmetric:
        raise SectorError('Ensemble excitation probabilities need the symmetric representation')
    if not config.multi_ensemble:
        return (population(x, lambda label: label.atom_part > 0),)
    return tuple(population(x, lambda label, k=k: label.atom_part[k] > 0)
            for k in range(len(config.ensembles)))


def bloch_qubits(count=10):
    '''
    `count` qubits (alpha, beta) spread over the Bloch sphere, poles
    included.
    '''

    qubits = []
    for k in range(count):
        polar = math.pi * k / max(count - 1, 1)
        azimuth = 2 * math.pi * k / count
        qubits.append((complex(math.cos(polar / 2)),
                complex(math.cos(azimuth), math.sin(azimuth)) * math.sin(polar / 2)))
    return qubits


def _json_value(value):
    if isinstance(value, complex):
        return {'re': value.real, 'im': value.imag}
    return value


def result_to_dict(result):
    data = {
        'protocol': result.protocol,
        'params': {key: _json_value(value) for key, value in result.params.items()},
        'schedule': [{'step': index, 'duration': step.duration}
                for index, step in enumerate(result.schedule.steps)],
        'fidelity': result.fidelity,
        'success_probability': result.success_probability,
        'final_state': state_to_dict(result.final_state),
    }
    if result.roundtrip_fidelity is not None:
        data['roundtrip_fidelity'] = result.roundtrip_fidelity
    return data


def dumps_result(result):
    return dumps_json(result_to_dict(result))
