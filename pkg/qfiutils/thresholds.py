""" Critical noise parameters and gap curves for white-noise families.

    >>> import qfiutils.states as st
    >>> import qfiutils.observables as obs
    >>> import qfiutils.thresholds as th
    >>> sz = obs.pauli('z')
    >>> res = th.find_threshold(st.example2_family(), 'theorem1',
    ...                         obs.ObservableSet([sz, sz]))
    >>> round(res.p_critical, 4)
    0.5044
"""

import csv
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence, TextIO, Union
import numpy as np
import qfiutils.criteria as cr
from qfiutils.qfi_conf import CONF
from qfiutils.states import NoisyFamily, check_probability
from qfiutils.observables import ObservableSet
from qfiutils.NoViolationException import NoViolationException
from qfiutils.ParameterOutOfRangeException import ParameterOutOfRangeException
from qfiutils.UnknownNameException import UnknownNameException

SCAN_STEP = CONF['scan_step']
THRESHOLD_TOL = CONF['threshold_tol']
CSV_DIGITS = CONF['csv_digits']

# Closed-form gap curves of the two white-noise examples
EX2_THEOREM1 = 'example2_theorem1'
EX2_YM = 'example2_ym_bipartite'
EX2_PPT = 'example2_ppt'
EX3_THEOREM2 = 'example3_theorem2'
EX3_YM = 'example3_ym_tripartite'

CLOSED_FORMS = {
    EX2_THEOREM1: lambda p: (64 * p * p / (9 * p + 9) -
                             (2 - 4 * p * p / 81 - 14 * p / 9)),
    EX2_YM: lambda p: 64 * p * p / (9 * p + 9) - (2 - 14 * p / 9),
    # -(min eigenvalue of the partial transpose)
    EX2_PPT: lambda p: 4 * p / 9 - (1 - p) / 4,
    # y1; half-sum of pair variances is 7/4 - 5p/12 - (1 + p/9)^2
    EX3_THEOREM2: lambda p: (656 * p * p / (243 * p + 81) -
                             (7 / 4 - 5 * p / 12 - (1 + p / 9) ** 2)),
    # y2
    EX3_YM: lambda p: 2624 * p * p / (243 * p + 81) - (3 - 23 * p / 9),
}

# Published onset values, printed next to the reproduced ones
PUBLISHED = {
    EX2_THEOREM1: 0.5044,
    EX2_YM: 0.5067,
    EX2_PPT: 9 / 25,
    EX3_THEOREM2: 0.3439,
    EX3_YM: 0.3657,
}
# Mean-value criterion onset for the three-qubit example
MEAN_VALUE_THRESHOLD = 9 / 23

LOG = logging.getLogger(__name__)


class SweepRow:
    def __init__(self, p: float, gaps: dict):
        """c-tor. Gaps at one grid point, keyed by criterion id."""
        self.p = p
        self.gaps = gaps

    def __repr__(self):
        return "SweepRow(p={!r}, gaps={!r})".format(self.p, self.gaps)


class ThresholdResult:
    def __init__(self, criterion_id: str, p_critical: float,
                 bracket: tuple, iterations: int):
        """c-tor.

        Args
        ----
        criterion_id
            Criterion or closed-form case name
        p_critical
            Upper end of the final bracket, the smallest p known to detect
        bracket
            (p_lo, p_hi) with gap(p_lo) <= 0 < gap(p_hi)
        iterations
            Bisection steps taken

        """
        self.criterion_id = criterion_id
        self.p_critical = p_critical
        self.bracket = bracket
        self.iterations = iterations

    def csv_row(self, digits: int = CSV_DIGITS) -> list:
        fmt = '{:.%dg}' % digits
        return [self.criterion_id, fmt.format(self.p_critical),
                fmt.format(self.bracket[0]), fmt.format(self.bracket[1]),
                str(self.iterations)]

    def __repr__(self):
        return "ThresholdResult({}, p_critical={!r}, bracket={!r}, " \
               "iterations={})".format(self.criterion_id, self.p_critical,
                                      self.bracket, self.iterations)


ObservableArg = Union[ObservableSet, dict, None]


def _observables_for(observables: ObservableArg, criterion_id: str):
    if isinstance(observables, dict):
        return observables.get(criterion_id)
    return observables


def gap_at(family: NoisyFamily, criterion_id: str,
           observables: ObservableArg, p: float) -> float:
    """Gap of one criterion on the family member at p.

    PPT uses gap = -(minimum partial-transpose eigenvalue) on the cut
    {0} | rest.
    """
    rho = family(p)
    return cr.evaluate(criterion_id, rho,
                       _observables_for(observables, criterion_id)).gap


def _sweep_point(args: tuple) -> SweepRow:
    family, criteria, observables, p = args
    gaps = {cid: gap_at(family, cid, observables, p) for cid in criteria}
    return SweepRow(p, gaps)


def check_grid(grid: Sequence[float]) -> list:
    """Raise ParameterOutOfRangeException unless grid is strictly
    increasing inside [0, 1]."""
    grid = [check_probability(p) for p in grid]
    for lo, hi in zip(grid, grid[1:]):
        if not lo < hi:
            raise ParameterOutOfRangeException(
                "Grid must be strictly increasing: {} then {}".format(lo, hi))
    return grid


def make_grid(start: float, stop: float, count: int) -> list:
    """count evenly spaced points from start to stop inclusive.

    Raises
    ------
    ParameterOutOfRangeException
        count < 2 or not 0 <= start < stop <= 1.

    """
    if count < 2:
        raise ParameterOutOfRangeException(
            "Grid needs at least 2 points: {}".format(count))
    if not 0.0 <= start < stop <= 1.0:
        raise ParameterOutOfRangeException(
            "Grid needs 0 <= start < stop <= 1: {}:{}".format(start, stop))
    return [float(p) for p in np.linspace(start, stop, count)]


def sweep(family: NoisyFamily, criteria: Sequence[str],
          observables: ObservableArg, grid: Sequence[float],
          jobs: int = 1) -> list:
    """Evaluate criteria gaps on every grid point through the full
    numeric pipeline.

    Args
    ----
    family
        White-noise family
    criteria
        Criterion ids; may be empty
    observables
        One ObservableSet for every criterion, or a dict keyed by
        criterion id when criteria use different observables
    grid
        Strictly increasing values in [0, 1]
    jobs
        Worker processes. Rows come back ordered by p either way.

    Returns
    -------
    list
        One SweepRow per grid point.

    Raises
    ------
    ParameterOutOfRangeException

    """
    grid = check_grid(grid)
    criteria = list(criteria)
    for cid in criteria:
        if cid not in cr.CRITERIA:
            raise UnknownNameException("Unknown criterion: {}".format(cid))
    tasks = [(family, criteria, observables, p) for p in grid]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            rows = list(executor.map(_sweep_point, tasks))
    else:
        rows = [_sweep_point(task) for task in tasks]
    LOG.info("Swept {} on {} points of {}".format(criteria, len(grid),
                                                 family.name))
    return rows


def check_tol(tol: float) -> float:
    """Raise ParameterOutOfRangeException unless 0 < tol < 1."""
    if not 0.0 < tol < 1.0:
        raise ParameterOutOfRangeException(
            "Threshold tolerance must lie in (0, 1), got {}".format(tol))
    return tol


def bracket_root(gap: Callable[[float], float], name: str,
                 tol: float = THRESHOLD_TOL,
                 step: float = SCAN_STEP) -> ThresholdResult:
    """First sign change of gap on [0, 1], refined by bisection.

    A coarse scan at spacing step finds the first point with gap > 0;
    bisection then shrinks that bracket until its width is at most tol.
    The gap is not assumed monotone.

    Raises
    ------
    ParameterOutOfRangeException
        gap(0) > 0, or tol lies outside (0, 1).
    NoViolationException
        gap stays <= 0 on the whole scan.

    """
    check_tol(tol)
    n_steps = int(round(1.0 / step))
    scan = [k / n_steps for k in range(n_steps + 1)]
    if gap(scan[0]) > 0:
        raise ParameterOutOfRangeException(
            "{} is already violated at p=0".format(name))

    lo = hi = None
    for prev, cur in zip(scan, scan[1:]):
        if gap(cur) > 0:
            lo, hi = prev, cur
            break
    if hi is None:
        raise NoViolationException("{} is never violated on [0, 1]".format(name))

    iterations = 0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        # bracket is down to adjacent floats
        if mid in (lo, hi):
            break
        if gap(mid) > 0:
            hi = mid
        else:
            lo = mid
        iterations += 1
    LOG.info("{} onset in [{:.9f}, {:.9f}] after {} bisections".format(
        name, lo, hi, iterations))
    return ThresholdResult(name, hi, (lo, hi), iterations)


def find_threshold(family: NoisyFamily, criterion_id: str,
                   observables: ObservableArg,
                   tol: float = THRESHOLD_TOL,
                   step: float = SCAN_STEP) -> ThresholdResult:
    """Smallest p at which criterion_id detects the family member.

    Raises
    ------
    NoViolationException
        The criterion never detects on [0, 1]. A signal, not a failure.
    ParameterOutOfRangeException
        The maximally mixed member (p = 0) is already flagged.

    """
    if criterion_id not in cr.CRITERIA:
        raise UnknownNameException("Unknown criterion: {}".format(criterion_id))
    return bracket_root(
        lambda p: gap_at(family, criterion_id, observables, p),
        criterion_id, tol, step)


def closed_form_gap(case: str, p: float) -> float:
    """Closed-form gap of one of CLOSED_FORMS at p.

    Raises
    ------
    UnknownNameException

    """
    if case not in CLOSED_FORMS:
        raise UnknownNameException("Unknown closed form: {}".format(case))
    return CLOSED_FORMS[case](check_probability(p))


def closed_form_root(case: str, tol: float = THRESHOLD_TOL) -> ThresholdResult:
    """Onset of a closed-form gap by the same scan and bisection."""
    if case not in CLOSED_FORMS:
        raise UnknownNameException("Unknown closed form: {}".format(case))
    return bracket_root(CLOSED_FORMS[case], case, tol)


def max_bisections(tol: float, step: float = SCAN_STEP) -> int:
    """Upper bound on bisection steps from a bracket of width step."""
    return math.ceil(math.log2(step / tol)) + 1


def write_sweep_csv(rows: Sequence[SweepRow], criteria: Sequence[str],
                    stream: TextIO, digits: int = CSV_DIGITS):
    """Header p,<criterion ids...> then one line per row, LF endings."""
    fmt = '{:.%dg}' % digits
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(['p'] + list(criteria))
    for row in rows:
        writer.writerow([fmt.format(row.p)] +
                        [fmt.format(row.gaps[cid]) for cid in criteria])
