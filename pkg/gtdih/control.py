import io
import csv
import sys
import json
import logging
import argparse
from dataclasses import dataclass

import yaml

from gtdih import common
from gtdih.common import (ShadowError, BoundError, LevelError, NotMemberError, TowerError,
                          VerificationError, LogFileHandler, canonicalize)
from gtdih.free_word import format_word
from gtdih.dihedral import gn_order
from gtdih.shadows import (Shadow, enumerate_brute, enumerate_closed, compose, inverse,
                           cayley_table, cayley_rows, shadow_order, check_bound)
from gtdih.poset import reduce_shadow, fiber_report, fibers_uniform
from gtdih.structure import rho, structure_of, index_pb3, arith_lower_bound
from gtdih.lochak_schneps import ls_witness, ls_verify
from gtdih.profinite import (psi_map, full_group, ftilde_elements, generator_closure,
                             tower_from_element, tower_check, tower_first_failure)
from gtdih.verify import VerifySettings, run_suite

__all__ = ['COMMANDS', 'FORMATS', 'EXIT_OK', 'EXIT_FAILED', 'EXIT_USAGE', 'CommandConfig',
           'Controller', 'main']


#: Commands understood by the Controller
COMMANDS = ('enumerate', 'compose', 'invert', 'table', 'reduce', 'fibers', 'ls-witness',
            'structure', 'index', 'bound', 'profinite', 'tower', 'order', 'verify-all')

#: Output formats
FORMATS = ('json', 'csv')

EXIT_OK     = 0
EXIT_FAILED = 1
EXIT_USAGE  = 2

_CSV_COMMANDS = ('enumerate', 'table')

_USAGE_ERRORS = (ShadowError, BoundError, LevelError, NotMemberError, TowerError)

# Loader used for the configuration file
_LOADER = getattr(yaml, 'CSafeLoader', yaml.SafeLoader)


@dataclass
class CommandConfig(object):
    command: str
    n: int = None
    q: int = None
    alpha: int = None
    a: str = None
    b: str = None
    m: int = None
    k: int = None
    format: str = 'json'
    bound: int = None
    check: bool = False


class Controller(object):
    """
    Parse the configuration and run commands, returning an exit code and a
    serialized report for each.
    """

    def __init__(self, config_file=None, bound=None):
        self.logger = logging.getLogger(__name__)
        self.config_file = config_file

        if config_file is None:
            conf = self.default_config()
        else:
            conf = self.parse_config(config_file)
        self.conf = conf

        self.set_properties(bound=bound)

    def set_properties(self, bound=None):
        """
        Set the enumeration bound, then the remaining limits from the
        configuration.
        """

        self.bound = bound
        if self.bound is None:
            self.bound = self.conf['enumeration'].get('bound', None)
        if self.bound is None:
            self.bound = common.default_enumeration_bound()

        self.profinite_bound = self.conf['profinite'].get('bound', common.PROFINITE_BOUND)

        vconf = self.conf['verification']
        self.settings = VerifySettings(bound=self.bound,
                                       profinite_bound=self.profinite_bound,
                                       sample_size=vconf.get('sample_size', common.SAMPLE_SIZE),
                                       seed=vconf.get('seed', common.RANDOM_SEED),
                                       exhaustive_limit=vconf.get('exhaustive_limit', common.EXHAUSTIVE_LIMIT),
                                       closure_limit=vconf.get('closure_limit', common.CLOSURE_LIMIT))
        self.default_format = self.conf['output'].get('format', 'json')

    @staticmethod
    def default_config():
        return {'enumeration': {'bound': None},
                'profinite': {'bound': common.PROFINITE_BOUND},
                'verification': {'sample_size': common.SAMPLE_SIZE,
                                 'seed': common.RANDOM_SEED,
                                 'exhaustive_limit': common.EXHAUSTIVE_LIMIT,
                                 'closure_limit': common.CLOSURE_LIMIT},
                'output': {'format': 'json'}}

    @staticmethod
    def parse_config(config_file):
        """ Parse yaml format config_file and return dict
        """

        with open(config_file, 'r') as fh:
            conf = yaml.load(fh, Loader=_LOADER)
        if not isinstance(conf, dict):
            raise RuntimeError('Config file is not a mapping')
        for key in ('enumeration', 'profinite', 'verification', 'output'):
            if key not in conf:
                raise RuntimeError(f'Config file missing "{key}" key')
            if conf[key] is None:
                conf[key] = {}
        return conf

    def run(self, config):
        """
        Run a command and return (exit code, report text).
        """

        if config.command not in COMMANDS:
            self.logger.error(f"Unknown command '{config.command}'")
            return EXIT_USAGE, ''
        if config.format is None:
            config.format = self.default_format
        if config.format not in FORMATS:
            self.logger.error(f"Unknown format '{config.format}'")
            return EXIT_USAGE, ''
        if config.format == 'csv' and config.command not in _CSV_COMMANDS:
            self.logger.error(f"CSV output is only available for {', '.join(_CSV_COMMANDS)}")
            return EXIT_USAGE, ''
        if config.bound is not None:
            self.set_properties(bound=config.bound)

        method = getattr(self, 'cmd_' + config.command.replace('-', '_'))
        try:
            ok, report = method(config)
        except _USAGE_ERRORS as e:
            self.logger.error(str(e))
            return EXIT_USAGE, ''
        except VerificationError as e:
            self.logger.error(f"Verification failed: {str(e)}")
            return EXIT_FAILED, ''

        if not isinstance(report, str):
            report = json.dumps(report, sort_keys=True)
        return (EXIT_OK if ok else EXIT_FAILED), report

    @staticmethod
    def _require(config, *names):
        for name in names:
            if getattr(config, name) is None:
                raise ShadowError(f"Command '{config.command}' needs --{name}")

    def cmd_enumerate(self, config):
        self._require(config, 'n')
        check_bound(config.n, self.bound)
        shadows = enumerate_closed(config.n)
        ok = True
        report = {'n': canonicalize(config.n), 'count': len(shadows),
                  'shadows': [s.as_dict() for s in shadows]}
        if config.check:
            progress = (self.logger.isEnabledFor(logging.DEBUG)
                        and canonicalize(config.n) > self.settings.closure_limit)
            brute = enumerate_brute(config.n, bound=self.bound, progress=progress)
            ok = set(brute) == set(shadows)
            report['brute_equals_closed'] = ok
            if not ok:
                self.logger.error(f"Brute force and closed form disagree at n={config.n}")

        if config.format == 'csv':
            return ok, _to_csv([['n', 'm', 'k', 'u', 'word']]
                               + [[s.n, s.m, s.k, s.u, format_word(s.word)] for s in shadows])
        return ok, report

    def cmd_compose(self, config):
        self._require(config, 'n', 'a', 'b')
        a = Shadow.parse(config.n, config.a)
        b = Shadow.parse(config.n, config.b)
        return True, compose(a, b).as_dict()

    def cmd_invert(self, config):
        self._require(config, 'n', 'a')
        return True, inverse(Shadow.parse(config.n, config.a)).as_dict()

    def cmd_table(self, config):
        self._require(config, 'n')
        check_bound(config.n, self.bound)
        shadows, table = cayley_table(config.n)
        if config.format == 'csv':
            return True, _to_csv(cayley_rows(shadows, table))
        return True, {'n': canonicalize(config.n),
                      'labels': [s.label for s in shadows],
                      'table': table.tolist()}

    def cmd_reduce(self, config):
        self._require(config, 'q', 'n', 'a')
        source = Shadow.parse(config.q, config.a)
        target = reduce_shadow(source, config.n)
        return True, {'q': source.n, 'n': target.n,
                      'source': source.as_dict(), 'target': target.as_dict()}

    def cmd_fibers(self, config):
        self._require(config, 'q', 'n')
        fibers = fiber_report(config.q, config.n, bound=self.bound)
        uniform = fibers_uniform(config.q, fibers)
        if not uniform:
            self.logger.error(f"Fibers of {config.q} -> {config.n} are not uniform")
        return uniform, {'q': config.q, 'n': config.n, 'uniform': uniform,
                         'fibers': [{'m': s.m, 'k': s.k, 'size': size}
                                    for s, size in sorted(fibers.items())]}

    def cmd_ls_witness(self, config):
        self._require(config, 'n')
        if config.a is not None:
            s = Shadow.parse(config.n, config.a)
        else:
            self._require(config, 'm', 'k')
            s = Shadow(config.n, config.m, config.k)
        g, h, case = ls_witness(s)
        verified = ls_verify(s, g, h)
        return verified, {'g': format_word(g), 'h': format_word(h), 'case': case,
                          'verified': verified}

    def cmd_structure(self, config):
        self._require(config, 'n')
        canonicalize(config.n)
        return True, structure_of(config.n).as_dict()

    def cmd_index(self, config):
        self._require(config, 'n')
        canonicalize(config.n)
        return True, {'n': config.n, 'index': index_pb3(config.n), 'gn_order': gn_order(config.n)}

    def cmd_bound(self, config):
        self._require(config, 'n')
        canonicalize(config.n)
        return True, {'n': config.n, 'lower_bound': arith_lower_bound(config.n),
                      'order': structure_of(config.n).order}

    def cmd_profinite(self, config):
        self._require(config, 'alpha')
        alpha = config.alpha
        closure = generator_closure(alpha, bound=self.profinite_bound)
        members = ftilde_elements(alpha)
        kernel = {a for a in full_group(alpha) if psi_map(a) == 0}
        ok = closure == members == kernel and len(members) == 2**(2*alpha - 2)
        return ok, {'alpha': alpha, 'closure_size': len(closure),
                    'membership_count': len(members),
                    'closure_equals_membership': closure == members,
                    'kernel_equals_membership': kernel == members}

    def cmd_tower(self, config):
        self._require(config, 'alpha', 'a')
        try:
            k, u = (int(v, 10) for v in config.a.split(','))
        except ValueError:
            raise ShadowError(f"Cannot interpret '{config.a}' as a pair k,u")
        tower = tower_from_element(k, u, config.alpha)
        report = tower.as_dict()
        report['valid'] = tower_check(tower)
        report['first_failure'] = tower_first_failure(tower)
        return report['valid'], report

    def cmd_order(self, config):
        self._require(config, 'n', 'a')
        s = Shadow.parse(config.n, config.a)
        a = rho(s)
        return True, {'shadow': s.as_dict(), 'order': shadow_order(s),
                      'rho': {'k': a.k, 'u': a.u}}

    def cmd_verify_all(self, config):
        self._require(config, 'n')
        check_bound(config.n, self.bound)
        ok, results = run_suite(config.n, self.settings,
                                progress=self.logger.isEnabledFor(logging.DEBUG))
        return ok, {'n': config.n, 'ok': ok, 'checks': dict(results)}


def _to_csv(rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator='\n')
    writer.writerows(rows)
    return buf.getvalue()


def _build_parser():
    parser = argparse.ArgumentParser(
        description='Enumerate, compose, reduce and classify GT-shadows with dihedral targets',
        formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    parser.add_argument('command', type=str, choices=COMMANDS,
                        help='command to run')
    parser.add_argument('--n', type=int,
                        help='target modulus')
    parser.add_argument('--q', type=int,
                        help='finer source modulus for reduce and fibers')
    parser.add_argument('--alpha', type=int,
                        help='2-adic level')
    parser.add_argument('--a', type=str,
                        help="first shadow as 'm,k' (or 'k,u' for tower)")
    parser.add_argument('--b', type=str,
                        help="second shadow as 'm,k'")
    parser.add_argument('--m', type=int,
                        help='m coordinate for ls-witness')
    parser.add_argument('--k', type=int,
                        help='k coordinate for ls-witness')
    parser.add_argument('--format', type=str, choices=FORMATS,
                        help='output format; defaults to the configured format')
    parser.add_argument('--bound', type=int,
                        help=f'enumeration bound; defaults to ${common.BOUND_ENV_VAR} or {common.ENUMERATION_BOUND}')
    parser.add_argument('--check', action='store_true',
                        help='cross-check the closed form against brute force')
    parser.add_argument('--config', type=str,
                        help='YAML configuration file')
    parser.add_argument('--logfile', type=str,
                        help='also log to this file, rotated daily')
    parser.add_argument('-v', '--verbose', action='store_true',
                        help='debug logging')
    return parser


def main(argv=None):
    args = _build_parser().parse_args(argv)

    logging.basicConfig(format='%(levelname)s:%(message)s',
                        level=logging.DEBUG if args.verbose else logging.INFO)
    if args.logfile is not None:
        handler = LogFileHandler(args.logfile)
        handler.setFormatter(logging.Formatter('%(asctime)s %(levelname)s:%(name)s:%(message)s'))
        logging.getLogger().addHandler(handler)

    try:
        controller = Controller(config_file=args.config, bound=args.bound)
    except (OSError, RuntimeError, yaml.YAMLError) as e:
        logging.getLogger(__name__).error(f"Cannot load configuration: {str(e)}")
        return EXIT_USAGE

    config = CommandConfig(command=args.command, n=args.n, q=args.q, alpha=args.alpha,
                           a=args.a, b=args.b, m=args.m, k=args.k, format=args.format,
                           bound=args.bound, check=args.check)
    code, report = controller.run(config)
    if report:
        sys.stdout.write(report if report.endswith('\n') else report + '\n')
    return code
