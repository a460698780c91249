""" Command line entry point, installed as qfi-ent.

    $ qfi-ent example 3
    $ qfi-ent export 1 --dir ex1
    $ qfi-ent check --state ex1/state.json --obs ex1/obs_0.json --obs ex1/obs_1.json
    $ qfi-ent sweep example3 --grid 0:1:101 --out curves.csv
    $ qfi-ent threshold example2 --criterion ppt
    $ qfi-ent sample --dims 2,3 --terms 4 --seed 7 --out sep.json

    Exit codes: 0 success (check: entanglement detected), 1 usage or input
    error, 2 inconclusive (check) or no violation (threshold).
"""

import argparse
import logging
import os
import sys
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Optional
import numpy as np
import qfiutils.criteria as cr
import qfiutils.states as st
import qfiutils.thresholds as th
import qfiutils.worked_examples as we
from qfiutils.qfi_conf import CONF
from qfiutils.observables import ObservableSet, dump_observable, \
    load_observable, pauli
from qfiutils.QfiException import QfiException
from qfiutils.InvariantViolationException import InvariantViolationException
from qfiutils.NoViolationException import NoViolationException
from qfiutils.ParameterOutOfRangeException import ParameterOutOfRangeException
from qfiutils.UnknownNameException import UnknownNameException

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INCONCLUSIVE = 2

EXAMPLE = 'example'
CHECK = 'check'
SWEEP = 'sweep'
THRESHOLD = 'threshold'
EXPORT = 'export'
SAMPLE = 'sample'

CUSTOM = 'custom'
GHZ_PREFIX = 'ghz'
DEFAULT_GRID = '0:1:101'
STATE_FILE = 'state.json'
OBS_FILE = 'obs_{}.json'

LOG = logging.getLogger(__name__)


@dataclass
class RunConfig:
    """Everything one command needs, resolved from the command line."""
    command: str
    state_path: Optional[str] = None
    observable_paths: list = field(default_factory=list)
    p_grid: Optional[tuple] = None
    tol: float = CONF['threshold_tol']
    output_path: Optional[str] = None
    seed: int = 0
    jobs: int = 1
    family: Optional[str] = None
    criteria: Optional[list] = None
    example: Optional[int] = None
    p: Optional[float] = None
    dims: Optional[tuple] = None
    terms: int = 1
    out_dir: Optional[str] = None

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> 'RunConfig':
        conf = cls(args.command)
        for key in ('state_path', 'p_grid', 'tol', 'output_path', 'seed',
                    'jobs', 'family', 'criteria', 'example', 'p', 'dims',
                    'terms', 'out_dir'):
            val = getattr(args, key, None)
            if val is not None:
                setattr(conf, key, val)
        conf.observable_paths = list(getattr(args, 'observable_paths', None)
                                     or [])
        return conf

    @property
    def grid(self) -> list:
        return th.make_grid(*self.p_grid)


class _Parser(argparse.ArgumentParser):
    """Usage errors exit with 1; 2 is reserved for inconclusive results."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, '{}: error: {}\n'.format(self.prog, message))


def _grid_arg(text: str) -> tuple:
    parts = text.split(':')
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(
            "grid must be start:stop:count, got {}".format(text))
    try:
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise argparse.ArgumentTypeError("bad number in grid {}".format(text))
    try:
        th.make_grid(start, stop, count)
    except ParameterOutOfRangeException as err:
        raise argparse.ArgumentTypeError(str(err))
    return start, stop, count


def _tol_arg(text: str) -> float:
    try:
        return th.check_tol(float(text))
    except ValueError:
        raise argparse.ArgumentTypeError("bad tolerance {}".format(text))
    except ParameterOutOfRangeException as err:
        raise argparse.ArgumentTypeError(str(err))


def _dims_arg(text: str) -> tuple:
    try:
        dims = tuple(int(d) for d in text.split(','))
    except ValueError:
        raise argparse.ArgumentTypeError("dims must be like 2,3: {}".format(text))
    if any(d < 1 for d in dims):
        raise argparse.ArgumentTypeError("dims must be positive: {}".format(text))
    return dims


def _criteria_arg(text: str) -> list:
    names = [name for name in text.split(',') if name]
    for name in names:
        if name not in cr.CRITERIA:
            raise argparse.ArgumentTypeError(
                "unknown criterion {}; choose from {}".format(
                    name, ','.join(cr.CRITERIA)))
    return names


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog='qfi-ent',
                     description="Entanglement detection with quantum Fisher "
                                 "information versus variance criteria.")
    parser.add_argument('-v', '--verbose', action='store_true',
                        help="Log at DEBUG level to standard error")
    sub = parser.add_subparsers(dest='command', required=True)

    p_example = sub.add_parser(EXAMPLE, help="Reproduce a worked example")
    p_example.add_argument('example', type=int, choices=we.EXAMPLES)
    p_example.add_argument('--out', dest='output_path')

    p_check = sub.add_parser(CHECK, help="Evaluate every criterion on a state")
    p_check.add_argument('--state', dest='state_path', required=True)
    p_check.add_argument('--obs', dest='observable_paths', action='append',
                         help="Observable file or Pauli name, one per "
                              "subsystem in order")
    p_check.add_argument('--out', dest='output_path')

    for name, helptext in ((SWEEP, "Gap curves over a p grid"),
                           (THRESHOLD, "Onset of detection in p")):
        p_fam = sub.add_parser(name, help=helptext)
        p_fam.add_argument('family',
                           help="example2, example3, ghzN or custom")
        p_fam.add_argument('--state', dest='state_path',
                           help="Rank-one state file for the custom family")
        p_fam.add_argument('--obs', dest='observable_paths', action='append')
        p_fam.add_argument('--out', dest='output_path')
        if name == SWEEP:
            p_fam.add_argument('--grid', dest='p_grid', type=_grid_arg,
                               default=_grid_arg(DEFAULT_GRID))
            p_fam.add_argument('--criteria', type=_criteria_arg)
            p_fam.add_argument('--jobs', type=int, default=os.cpu_count() or 1)
        else:
            p_fam.add_argument('--criterion', dest='criteria',
                               type=_criteria_arg, required=True)
            p_fam.add_argument('--tol', type=_tol_arg,
                               default=CONF['threshold_tol'])

    p_export = sub.add_parser(EXPORT, help="Write an example state and "
                                           "observables to files")
    p_export.add_argument('example', type=int, choices=we.EXAMPLES)
    p_export.add_argument('--dir', dest='out_dir', required=True)
    p_export.add_argument('--p', type=float)

    p_sample = sub.add_parser(SAMPLE, help="Write a random separable state")
    p_sample.add_argument('--dims', type=_dims_arg, required=True)
    p_sample.add_argument('--terms', type=int, default=1)
    p_sample.add_argument('--seed', type=int, default=0)
    p_sample.add_argument('--out', dest='output_path')
    return parser


@contextmanager
def _output(path: Optional[str]):
    if path is None:
        yield sys.stdout
    else:
        with open(path, 'w', encoding='utf-8', newline='\n') as fh:
            yield fh
        LOG.info("Wrote {}".format(path))


def _observable(item: str):
    if os.path.exists(item):
        return load_observable(item)
    try:
        return pauli(item)
    except UnknownNameException:
        raise UnknownNameException(
            "--obs {}: no such file and not a Pauli name (x, y, z, i)".format(
                item))


def _observable_set(items: list, dims) -> Optional[ObservableSet]:
    if items:
        return ObservableSet([_observable(item) for item in items], dims)
    if all(d == 2 for d in dims):
        return ObservableSet([pauli('z')] * len(dims))
    return None


def _custom_family(path: str) -> st.NoisyFamily:
    rho = st.load_state(path)
    if rho.rank() != 1:
        raise InvariantViolationException(
            "Custom family needs a rank-one state, {} has rank {}".format(
                path, rho.rank()))
    vec = rho.spectrum.eigenvectors[:, -1]
    return st.NoisyFamily(st.PureState(vec / np.linalg.norm(vec), rho.dims),
                          CUSTOM)


def resolve_family(conf: RunConfig) -> tuple:
    """(family, default criteria, observables) for a family name.

    Raises
    ------
    UnknownNameException
    ParseException, InvariantViolationException
        Bad custom state file.

    """
    name = conf.family
    if name == 'example2':
        family = st.example2_family()
        criteria = we.default_criteria(name)
        observables = we.example2_observables()
    elif name == 'example3':
        family = st.example3_family()
        criteria = we.default_criteria(name)
        observables = we.example3_observables()
    elif name.startswith(GHZ_PREFIX) and name[len(GHZ_PREFIX):].isdigit():
        family = st.ghz_family(int(name[len(GHZ_PREFIX):]))
        criteria = [cr.THEOREMN, cr.PPT]
        observables = None
    elif name == CUSTOM:
        if conf.state_path is None:
            raise UnknownNameException("custom family needs --state")
        family = _custom_family(conf.state_path)
        criteria = cr.applicable_criteria(len(family.dims))
        observables = None
    else:
        raise UnknownNameException("Unknown family: {}".format(name))
    if conf.observable_paths or observables is None:
        observables = _observable_set(conf.observable_paths, family.dims)
    return family, criteria, observables


def cmd_example(conf: RunConfig) -> int:
    run = we.run_example(conf.example)
    with _output(conf.output_path) as out:
        we.write_run(run, out, CONF['csv_digits'])
    for check in run.failed():
        print("example {}: check failed: {}".format(conf.example, check),
              file=sys.stderr)
    return EXIT_OK if run.passed else EXIT_ERROR


def cmd_check(conf: RunConfig) -> int:
    rho = st.load_state(conf.state_path)
    obs_set = _observable_set(conf.observable_paths, rho.dims)
    if obs_set is None:
        reports = [cr.ppt(rho, (0,))]
        LOG.warning("No observables for dims {}; only PPT evaluated".format(
            rho.dims))
    else:
        reports = cr.evaluate_all(rho, obs_set)
    with _output(conf.output_path) as out:
        out.write(','.join(cr.CSV_HEADER) + '\n')
        for report in reports:
            out.write(','.join(report.csv_row(CONF['csv_digits'])) + '\n')
    detected = any(report.entangled_detected for report in reports)
    return EXIT_OK if detected else EXIT_INCONCLUSIVE


def cmd_sweep(conf: RunConfig) -> int:
    family, criteria, observables = resolve_family(conf)
    if conf.criteria is not None:
        criteria = conf.criteria
    rows = th.sweep(family, criteria, observables, conf.grid, conf.jobs)
    with _output(conf.output_path) as out:
        th.write_sweep_csv(rows, criteria, out, CONF['csv_digits'])
    return EXIT_OK


def cmd_threshold(conf: RunConfig) -> int:
    family, _, observables = resolve_family(conf)
    if len(conf.criteria) != 1:
        raise UnknownNameException("threshold takes exactly one criterion")
    try:
        res = th.find_threshold(family, conf.criteria[0], observables,
                                conf.tol)
    except NoViolationException as err:
        print(str(err), file=sys.stderr)
        return EXIT_INCONCLUSIVE
    with _output(conf.output_path) as out:
        out.write('criterion_id,p_critical,p_lo,p_hi,iterations\n')
        out.write(','.join(res.csv_row(CONF['csv_digits'])) + '\n')
    return EXIT_OK


def cmd_export(conf: RunConfig) -> int:
    """Example state at --p (Example 1: the weight p, q = (1 - 4p)/2)."""
    os.makedirs(conf.out_dir, exist_ok=True)
    if conf.example == 1:
        if conf.p is None:
            rho = st.example1_state()
        else:
            rho = st.example1_state(conf.p, (1 - 4 * conf.p) / 2)
        obs_set = we.example1_observables()
    elif conf.example == 2:
        rho = st.example2_family()(1.0 if conf.p is None else conf.p)
        obs_set = we.example2_observables()[cr.THEOREM1]
    else:
        rho = st.example3_family()(1.0 if conf.p is None else conf.p)
        obs_set = we.example3_observables()[cr.THEOREM2]
    st.dump_state(rho, os.path.join(conf.out_dir, STATE_FILE))
    for i, op in enumerate(obs_set.ops):
        dump_observable(op, os.path.join(conf.out_dir, OBS_FILE.format(i)))
    return EXIT_OK


def cmd_sample(conf: RunConfig) -> int:
    rho = st.random_separable(conf.dims, conf.terms, conf.seed)
    with _output(conf.output_path) as out:
        out.write(st.state_to_text(rho))
    return EXIT_OK


COMMANDS = {
    EXAMPLE: cmd_example,
    CHECK: cmd_check,
    SWEEP: cmd_sweep,
    THRESHOLD: cmd_threshold,
    EXPORT: cmd_export,
    SAMPLE: cmd_sample,
}


def main(argv: list = None) -> int:
    """Parse argv, run one command and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return err.code if isinstance(err.code, int) else EXIT_ERROR

    level = logging.DEBUG if args.verbose else CONF['log_level']
    logging.basicConfig(level=level, format=CONF['log_format'],
                        stream=sys.stderr)
    conf = RunConfig.from_args(args)
    LOG.debug("Running {}".format(conf))
    try:
        return COMMANDS[conf.command](conf)
    except (QfiException, OSError) as err:
        print("qfi-ent {}: {}: {}".format(conf.command, type(err).__name__,
                                          err), file=sys.stderr)
        return EXIT_ERROR


if __name__ == '__main__':
    sys.exit(main())
