# -*- coding: utf-8 -*-
'''
Command-line front end.

    dickex --command verify [--interaction SUITE] [--tolerance TOL] [--out FILE]
    dickex --command protocol --protocol NAME [params] [--out FILE]
    dickex --command sweep --interaction NAME --t-end T --steps K [params] [--out FILE]
    dickex --command state (--in FILE | --ket TEXT | --m M) [--n-atoms N] [--format FMT]

Exit codes: 0 on success, 1 when a verification case fails, 2 for usage and
configuration errors.
'''

import argparse
import csv
import io
import logging
import math
import sys
from dataclasses import dataclass

import numpy as np

from dickex.closedform import (CouplingParams, evolve_m_photon, evolve_one_photon_state,
        evolve_raman, evolve_three_photon, m_photon_spec, one_photon_config, raman_config,
        three_photon_pair, three_photon_spec, UNIT_TOLERANCE)
from dickex.dicke import expand_to_product
from dickex.exception import ConfigError, DickexError, GuardError
from dickex.hilbert import as_label, dumps_state, loads_state, new_state, norm, populations
from dickex.notation import format_label, format_state, parse_state
from dickex.oracle import MAX_EMBED_ATOMS
from dickex.protocols import (cascade, chain_evolution, dumps_result, ladder_step, prepare_w,
        store_entangled_pair, store_qubit)
from dickex.verify import SUITES, all_passed, dumps_report, run_verification
from dickex.version import __VERSION__

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

COMMANDS = ('verify', 'protocol', 'sweep', 'state')
PROTOCOLS = ('prepare_w', 'disentangle', 'ladder_step', 'store_qubit', 'store_entangled_pair',
        'cascade', 'chain')
INTERACTIONS = ('one_photon', 'raman', 'm_photon', 'three_photon')
FORMATS = ('json', 'csv', 'ket')

LOG_FORMAT = '%(asctime)s %(levelname)s %(name)s: %(message)s'


def _float_list(text):
    try:
        return tuple(float(value) for value in text.split(','))
    except ValueError:
        raise argparse.ArgumentTypeError(f'expected comma-separated numbers (got {text!r})')


def _int_list(text):
    try:
        return tuple(int(value) for value in text.split(','))
    except ValueError:
        raise argparse.ArgumentTypeError(f'expected comma-separated integers (got {text!r})')


def build_parser():
    parser = argparse.ArgumentParser(prog='dickex',
            description='Closed-form and brute-force dynamics of atoms and few-photon fields')
    parser.add_argument('--version', action='version', version=f'%(prog)s {__VERSION__}')
    parser.add_argument('--command', required=True, choices=COMMANDS)
    parser.add_argument('--interaction',
            help=f'sweep/state interaction ({", ".join(INTERACTIONS)}) or verify suite')
    parser.add_argument('--protocol', help=f'one of {", ".join(PROTOCOLS)}')
    parser.add_argument('--n-atoms', type=int)
    parser.add_argument('--sizes', type=_int_list, help='comma-separated ensemble sizes')
    parser.add_argument('--coupling', type=float, default=1.0, help='g or f (default 1)')
    parser.add_argument('--time', type=_float_list,
            help='duration; two comma-separated values for the cascade')
    parser.add_argument('--t-start', type=float, default=0.0)
    parser.add_argument('--t-end', type=float)
    parser.add_argument('--steps', type=int)
    parser.add_argument('--alpha-re', type=float, default=1.0)
    parser.add_argument('--alpha-im', type=float, default=0.0)
    parser.add_argument('--beta-re', type=float, default=0.0)
    parser.add_argument('--beta-im', type=float, default=0.0)
    parser.add_argument('--m', type=int)
    parser.add_argument('--direction', type=int, choices=(1, -1))
    parser.add_argument('--order', type=int, help='photon order M of m_photon')
    parser.add_argument('--p', type=int, help='pair index p of m_photon')
    parser.add_argument('--n-photons', type=int, help='photon number n of three_photon')
    parser.add_argument('--in', dest='input', help='state JSON file to load')
    parser.add_argument('--ket', help='state in ket notation')
    parser.add_argument('--out', help='output file (default: standard output)')
    parser.add_argument('--format', default='json', choices=FORMATS)
    parser.add_argument('--tolerance', type=float)
    parser.add_argument('-v', '--verbose', action='store_true')
    return parser


@dataclass(frozen=True)
class RunConfig:
    '''
    Validated command-line parameters for one run.
    '''

    command: str
    interaction: str = None
    protocol: str = None
    n_atoms: int = None
    sizes: tuple = None
    coupling: float = 1.0
    time: tuple = None
    t_start: float = 0.0
    t_end: float = None
    steps: int = None
    alpha: complex = 1.0
    beta: complex = 0.0
    m: int = None
    direction: int = None
    order: int = None
    p: int = None
    n_photons: int = None
    input: str = None
    ket: str = None
    out: str = None
    format: str = 'json'
    tolerance: float = None

    @classmethod
    def from_args(cls, args):
        return cls(command=args.command, interaction=args.interaction, protocol=args.protocol,
                n_atoms=args.n_atoms, sizes=args.sizes, coupling=args.coupling, time=args.time,
                t_start=args.t_start, t_end=args.t_end, steps=args.steps,
                alpha=complex(args.alpha_re, args.alpha_im),
                beta=complex(args.beta_re, args.beta_im), m=args.m, direction=args.direction,
                order=args.order, p=args.p, n_photons=args.n_photons, input=args.input,
                ket=args.ket, out=args.out, format=args.format, tolerance=args.tolerance)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ConfigError(f'Unknown command {self.command!r}')
        numbers = [self.coupling, self.t_start, self.alpha.real, self.alpha.imag,
                self.beta.real, self.beta.imag]
        numbers += [value for value in (self.t_end, self.tolerance) if value is not None]
        numbers += list(self.time or ())
        if not all(math.isfinite(value) for value in numbers):
            raise ConfigError('Numeric parameters must be finite')

        if self.command == 'protocol':
            self._check_protocol()
        elif self.command == 'sweep':
            self._check_sweep()
        elif self.command == 'state':
            if sum(value is not None for value in (self.input, self.ket, self.m)) != 1:
                raise ConfigError('state needs exactly one of --in, --ket or --m')
            if self.m is not None:
                self.require('n_atoms')
            if self.ket is not None:
                self._check_interaction()
            if self.format == 'csv':
                raise ConfigError('state writes json or ket output')

    def require(self, *names):
        '''
        Raises ConfigError naming every flag in `names` left unset.
        '''

        missing = [name for name in names if getattr(self, name) is None]
        if missing:
            flags = ', '.join('--' + name.replace('_', '-') for name in missing)
            raise ConfigError(f'{self.command} needs {flags}')

    def _check_protocol(self):
        if self.protocol not in PROTOCOLS:
            raise ConfigError(f'Unknown protocol {self.protocol!r} (choose from {list(PROTOCOLS)})')
        if self.protocol == 'ladder_step':
            self.require('n_atoms', 'm', 'direction')
        elif self.protocol in ('cascade', 'chain'):
            self.require('sizes', 'time')
        else:
            self.require('n_atoms')

        durations = 2 if self.protocol == 'cascade' else 1
        if self.time is not None and len(self.time) != durations:
            raise ConfigError(f'{self.protocol} takes {durations} --time value(s)')
        if self.protocol == 'cascade' and len(self.sizes) != 2:
            raise ConfigError('cascade needs two --sizes values')
        if self.format == 'csv':
            raise ConfigError('protocol results are written as json')

    def _check_interaction(self):
        if self.interaction not in INTERACTIONS:
            raise ConfigError(f'Unknown interaction {self.interaction!r} '
                    f'(choose from {list(INTERACTIONS)})')
        if self.interaction == 'three_photon':
            self.require('n_photons')
        elif self.interaction == 'm_photon':
            self.require('n_atoms', 'order', 'p')
        else:
            self.require('n_atoms')

    def _check_sweep(self):
        self._check_interaction()
        if self.interaction == 'raman':
            self.require('m')
        self.require('t_end', 'steps')
        if self.steps < 2:
            raise ConfigError(f'A sweep needs at least 2 steps (got {self.steps})')
        if self.t_end == self.t_start:
            raise ConfigError('A sweep needs a non-empty time range')
        weight = abs(self.alpha) ** 2 + abs(self.beta) ** 2
        if abs(weight - 1.0) > UNIT_TOLERANCE:
            raise ConfigError(f'--alpha and --beta must be normalized (weight {weight!r})')


def _write(run, text):
    if run.out is None:
        sys.stdout.write(text)
        return
    with open(run.out, 'w') as output:
        output.write(text)
    logger.info('Report written to %s', run.out)


def cmd_verify(run):
    if run.interaction is not None and run.interaction not in SUITES:
        raise ConfigError(f'Unknown verification suite {run.interaction!r} '
                f'(choose from {list(SUITES)})')
    suites = None if run.interaction is None else (run.interaction,)
    cases = run_verification(run.tolerance, suites)
    _write(run, dumps_report(cases))
    failed = [case.case for case in cases if not case.passed]
    print(f'{len(cases) - len(failed)}/{len(cases)} cases passed')
    for name in failed:
        print(f'FAILED {name}')
    return EXIT_OK if all_passed(cases) else EXIT_FAILED


def _run_protocol(run):
    name = run.protocol
    if name in ('prepare_w', 'disentangle'):
        duration = run.time[0] if run.time else None
        return prepare_w(run.n_atoms, run.coupling, duration, name == 'disentangle')
    if name == 'ladder_step':
        return ladder_step(run.m, run.n_atoms, run.coupling, run.direction)
    if name == 'store_qubit':
        return store_qubit(run.alpha, run.beta, run.n_atoms, run.coupling)
    if name == 'store_entangled_pair':
        return store_entangled_pair(run.alpha, run.beta, run.n_atoms, run.coupling)
    if name == 'cascade':
        N1, N2 = run.sizes
        t1, t2 = run.time
        return cascade(N1, N2, run.coupling, run.coupling, t1, t2)
    return chain_evolution(run.sizes, run.coupling, run.time[0], run.alpha, run.beta)


def cmd_protocol(run):
    result = _run_protocol(run)
    _write(run, dumps_result(result))
    summary = f'{result.protocol}: fidelity {result.fidelity:.17g}'
    if result.success_probability is not None:
        summary += f', success probability {result.success_probability:.17g}'
    if result.roundtrip_fidelity is not None:
        summary += f', roundtrip fidelity {result.roundtrip_fidelity:.17g}'
    print(summary)
    return EXIT_OK


def _interaction_config(run):
    interaction = run.interaction
    if interaction == 'one_photon':
        return one_photon_config(run.n_atoms)
    if interaction == 'raman':
        return raman_config(run.n_atoms)
    if interaction == 'm_photon':
        return m_photon_spec(run.order, run.p, run.n_atoms, run.coupling).space
    return three_photon_spec(run.n_photons, run.coupling).space


def _sweep_evolver(run):
    '''
    Returns the tracked labels and a function t -> state for the sweep.
    '''

    config = _interaction_config(run)
    alpha, beta = run.alpha, run.beta
    interaction = run.interaction
    if interaction == 'one_photon':
        labels = [((1,), 0), ((0,), 1)]
        initial = new_state(config, zip(labels, (alpha, beta)))
        return labels, lambda params: evolve_one_photon_state(initial, params)

    if interaction == 'raman':
        m, N = run.m, run.n_atoms
        labels = [((0, 1), m)]
        if m < N:
            labels.append(((1, 0), m + 1))
        elif beta != 0:
            raise ConfigError(f'Raman pair of m={m} has no partner for --beta')
        initial = new_state(config, zip(labels, (alpha, beta)))
        return labels, lambda params: evolve_raman(initial, params)

    if interaction == 'm_photon':
        M, p = run.order, run.p
        labels = [((2 * M - p,), 0), ((M - p,), 1)]

        def m_photon(params):
            return new_state(config, zip(labels,
                    evolve_m_photon(M, p, run.n_atoms, alpha, beta, params)))
        return labels, m_photon

    pair = three_photon_pair(run.n_photons, run.coupling)
    n = run.n_photons
    labels = [((0, 1, n), 0), ((1, 0, n - 1), 0)]
    return labels, lambda params: pair.state(*evolve_three_photon(n, alpha, beta, params))


def cmd_sweep(run):
    '''
    Tabulates the populations of the tracked pair labels over the time
    grid as CSV, with the state norm as the last column.
    '''

    labels, evolve = _sweep_evolver(run)
    labels = [as_label(label) for label in labels]
    config = _interaction_config(run)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(['t'] + [format_label(config, label) for label in labels] + ['norm'])
    for t in np.linspace(run.t_start, run.t_end, run.steps):
        state = evolve(CouplingParams(run.coupling, float(t)))
        weights = populations(state)
        row = [float(t)] + [weights.get(label, 0.0) for label in labels] + [norm(state)]
        writer.writerow(['%.17g' % value for value in row])
    _write(run, buffer.getvalue())
    return EXIT_OK


def cmd_state(run):
    if run.input is not None:
        with open(run.input) as source:
            state = loads_state(source.read())
    elif run.ket is not None:
        state = parse_state(_interaction_config(run), run.ket)
    else:
        if run.n_atoms > MAX_EMBED_ATOMS:
            raise GuardError(f'Atom count {run.n_atoms} is over the expansion guard '
                    f'{MAX_EMBED_ATOMS}')
        state = expand_to_product(run.m, run.n_atoms)

    if run.format == 'ket':
        _write(run, format_state(state) + '\n')
    else:
        _write(run, dumps_state(state))
    return EXIT_OK


_COMMANDS = {
    'verify': cmd_verify,
    'protocol': cmd_protocol,
    'sweep': cmd_sweep,
    'state': cmd_state,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
            format=LOG_FORMAT)
    try:
        run = RunConfig.from_args(args)
        return _COMMANDS[run.command](run)
    except (DickexError, OSError) as exc:
        logger.error('%s', exc)
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
