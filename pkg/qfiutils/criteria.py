""" Entanglement criteria evaluated as signed gaps.

    Every criterion is an inequality LHS <= RHS obeyed by all (fully)
    separable states. A report's gap is LHS - RHS; a gap above
    DETECTION_THRESHOLD certifies entanglement. The criteria are
    sufficient only, so the verdict is 'entangled' or 'inconclusive' and
    never 'separable'.

    >>> import qfiutils.states as st
    >>> import qfiutils.observables as obs
    >>> import qfiutils.criteria as cr
    >>> a = obs.projector(4, [0, 1, 2, 3], [1, 1, -1, -1])
    >>> report = cr.theorem1(st.example1_state(), a, a)
    >>> report.verdict
    'entangled'
"""

import logging
from typing import Sequence
import qfiutils.linalg as la
from qfiutils.qfi_conf import CONF
from qfiutils.states import DensityMatrix
from qfiutils.observables import Observable, ObservableSet, collective_sum, \
    pairwise_difference, pair_product
from qfiutils.qfi import qfi, variance, expectation
from qfiutils.DimensionMismatchException import DimensionMismatchException
from qfiutils.UnknownNameException import UnknownNameException

DETECTION_THRESHOLD = CONF['detection_threshold']

THEOREM1 = 'theorem1'
THEOREM2 = 'theorem2'
THEOREMN = 'theoremN'
YM_BIPARTITE = 'ym_bipartite'
YM_TRIPARTITE = 'ym_tripartite'
PPT = 'ppt'
CRITERIA = [THEOREM1, THEOREM2, THEOREMN, YM_BIPARTITE, YM_TRIPARTITE, PPT]

ENTANGLED = 'entangled'
INCONCLUSIVE = 'inconclusive'

CSV_HEADER = ['criterion_id', 'lhs', 'rhs', 'gap', 'detected']

LOG = logging.getLogger(__name__)


class CriterionReport:
    def __init__(self, criterion_id: str, lhs: float, rhs: float):
        """c-tor. gap and the detection flag are derived from lhs and rhs.

        Args
        ----
        criterion_id
            One of CRITERIA, optionally suffixed (e.g. 'ppt[0]')
        lhs
            Left-hand side of the inequality
        rhs
            Right-hand side of the inequality

        """
        self.criterion_id = criterion_id
        self.lhs = float(lhs)
        self.rhs = float(rhs)
        self.gap = self.lhs - self.rhs
        self.entangled_detected = self.gap > DETECTION_THRESHOLD

    @property
    def verdict(self) -> str:
        return ENTANGLED if self.entangled_detected else INCONCLUSIVE

    def csv_row(self, digits: int = CONF['csv_digits']) -> list:
        fmt = '{:.%dg}' % digits
        return [self.criterion_id, fmt.format(self.lhs), fmt.format(self.rhs),
                fmt.format(self.gap), str(self.entangled_detected).lower()]

    def __repr__(self):
        return "CriterionReport({}, lhs={!r}, rhs={!r}, gap={!r}, {})".format(
            self.criterion_id, self.lhs, self.rhs, self.gap, self.verdict)


def _check_parties(rho: DensityMatrix, n: int, name: str):
    if rho.n_parties != n:
        raise DimensionMismatchException(
            "{} needs {} subsystems, state has dims {}".format(
                name, n, rho.dims))


def pair_variance(rho: DensityMatrix, obs_set: ObservableSet,
                  i: int, j: int) -> float:
    """Var(A_i x I - I x A_j) on the reduced state of subsystems (i, j)."""
    return variance(rho.reduce((i, j)), pairwise_difference(obs_set, i, j))


def local_second_moment(rho: DensityMatrix, op: Observable, i: int) -> float:
    """<A^2> on the reduced state of subsystem i."""
    return expectation(rho.reduce((i,)), op.squared())


def pair_correlation(rho: DensityMatrix, obs_set: ObservableSet,
                     i: int, j: int) -> float:
    """<A_i x A_j> on the reduced state of subsystems (i, j)."""
    return expectation(rho.reduce((i, j)), pair_product(obs_set, i, j))


def theorem1(rho: DensityMatrix, a: Observable, b: Observable) -> CriterionReport:
    """F(rho, A x I + I x B) <= Var(A x I - I x B).

    Raises
    ------
    DimensionMismatchException

    """
    _check_parties(rho, 2, THEOREM1)
    pair = ObservableSet([a, b], rho.dims)
    lhs = qfi(rho, collective_sum(pair)).value
    rhs = variance(rho, pairwise_difference(pair, 0, 1))
    return CriterionReport(THEOREM1, lhs, rhs)


def theorem2(rho: DensityMatrix, a: Observable, b: Observable,
             c: Observable) -> CriterionReport:
    """F(rho, A + B + C) <= (Var_AB(A - B) + Var_AC(A - C) + Var_BC(B - C)) / 2.

    Raises
    ------
    DimensionMismatchException

    """
    _check_parties(rho, 3, THEOREM2)
    triple = ObservableSet([a, b, c], rho.dims)
    lhs = qfi(rho, collective_sum(triple)).value
    rhs = 0.5 * (pair_variance(rho, triple, 0, 1) +
                 pair_variance(rho, triple, 0, 2) +
                 pair_variance(rho, triple, 1, 2))
    return CriterionReport(THEOREM2, lhs, rhs)


def theoremN(rho: DensityMatrix, obs_set: ObservableSet) -> CriterionReport:
    """F(rho, sum_i A_i) <= (1/2) sum_i Var(A_i - A_{i+1}) on rho_{i,i+1},
    cyclic with A_{N+1} = A_1.

    Raises
    ------
    DimensionMismatchException
        Fewer than two subsystems, or obs_set does not fit rho.

    """
    n = rho.n_parties
    if n < 2:
        raise DimensionMismatchException(
            "{} needs at least 2 subsystems: {}".format(THEOREMN, rho.dims))
    if obs_set.dims != rho.dims:
        raise DimensionMismatchException(
            "Observables on dims {} for state dims {}".format(obs_set.dims,
                                                              rho.dims))
    lhs = qfi(rho, collective_sum(obs_set)).value
    rhs = 0.5 * sum(pair_variance(rho, obs_set, i, (i + 1) % n)
                    for i in range(n))
    return CriterionReport(THEOREMN, lhs, rhs)


def ym_bipartite(rho: DensityMatrix, a: Observable,
                 b: Observable) -> CriterionReport:
    """F(rho, A x I + I x B) <= <A^2>_A + <B^2>_B - 2 |<A x B>|.

    Raises
    ------
    DimensionMismatchException

    """
    _check_parties(rho, 2, YM_BIPARTITE)
    pair = ObservableSet([a, b], rho.dims)
    lhs = qfi(rho, collective_sum(pair)).value
    rhs = (local_second_moment(rho, pair[0], 0) +
           local_second_moment(rho, pair[1], 1) -
           2.0 * abs(expectation(rho, pair_product(pair, 0, 1))))
    return CriterionReport(YM_BIPARTITE, lhs, rhs)


def ym_tripartite(rho: DensityMatrix, a: Observable, b: Observable,
                  c: Observable) -> CriterionReport:
    """F(rho, A + B + C) <= <A^2>_A + <B^2>_B + <C^2>_C - eta with
    eta = |<A x B>_AB| + |<B x C>_BC| + |<A x C>_AC|.

    Raises
    ------
    DimensionMismatchException

    """
    _check_parties(rho, 3, YM_TRIPARTITE)
    triple = ObservableSet([a, b, c], rho.dims)
    lhs = qfi(rho, collective_sum(triple)).value
    eta = (abs(pair_correlation(rho, triple, 0, 1)) +
           abs(pair_correlation(rho, triple, 1, 2)) +
           abs(pair_correlation(rho, triple, 0, 2)))
    rhs = sum(local_second_moment(rho, triple[i], i) for i in range(3)) - eta
    return CriterionReport(YM_TRIPARTITE, lhs, rhs)


def ppt_min_eigenvalue(rho: DensityMatrix, bipartition: Sequence[int]) -> float:
    """Smallest eigenvalue of rho transposed on the subsystems in bipartition.

    Negative means entangled across that cut.

    Raises
    ------
    DimensionMismatchException
        bipartition empty, out of range, or covering every subsystem.

    """
    cut = tuple(int(k) for k in bipartition)
    if (len(cut) == 0 or len(set(cut)) != len(cut) or
            len(cut) >= rho.n_parties or
            any(k < 0 or k >= rho.n_parties for k in cut)):
        raise DimensionMismatchException(
            "Invalid bipartition {} for dims {}".format(cut, rho.dims))
    transposed = rho.partial_transpose(cut)
    return float(la.hermitian_eig(transposed).eigenvalues[0])


def ppt(rho: DensityMatrix, bipartition: Sequence[int] = (0,)) -> CriterionReport:
    """PPT as a report: lhs 0, rhs the minimum partial-transpose eigenvalue."""
    cut = tuple(bipartition)
    name = PPT if cut == (0,) and rho.n_parties == 2 else '{}[{}]'.format(
        PPT, ','.join(str(k) for k in cut))
    return CriterionReport(name, 0.0, ppt_min_eigenvalue(rho, cut))


def applicable_criteria(n_parties: int) -> list:
    """Criteria that apply to a state with n_parties subsystems."""
    if n_parties == 2:
        return [THEOREM1, THEOREMN, YM_BIPARTITE, PPT]
    if n_parties == 3:
        return [THEOREM2, THEOREMN, YM_TRIPARTITE, PPT]
    if n_parties > 3:
        return [THEOREMN, PPT]
    return []


def evaluate(criterion_id: str, rho: DensityMatrix,
             obs_set: ObservableSet = None) -> CriterionReport:
    """Dispatch one criterion by name.

    PPT uses the cut {0} | rest and ignores obs_set.

    Raises
    ------
    UnknownNameException
        criterion_id not in CRITERIA.
    DimensionMismatchException

    """
    if criterion_id == PPT:
        return ppt(rho, (0,))
    if criterion_id not in CRITERIA:
        raise UnknownNameException(
            "Unknown criterion: {}".format(criterion_id))
    if obs_set is None:
        raise DimensionMismatchException(
            "{} needs one observable per subsystem".format(criterion_id))
    if criterion_id == THEOREMN:
        return theoremN(rho, obs_set)
    ops = obs_set.ops
    if criterion_id == THEOREM1:
        return theorem1(rho, *_exactly(ops, 2, criterion_id))
    if criterion_id == YM_BIPARTITE:
        return ym_bipartite(rho, *_exactly(ops, 2, criterion_id))
    if criterion_id == THEOREM2:
        return theorem2(rho, *_exactly(ops, 3, criterion_id))
    return ym_tripartite(rho, *_exactly(ops, 3, criterion_id))


def _exactly(ops: list, n: int, name: str) -> list:
    if len(ops) != n:
        raise DimensionMismatchException(
            "{} needs {} observables, got {}".format(name, n, len(ops)))
    return ops


def evaluate_all(rho: DensityMatrix, obs_set: ObservableSet) -> list:
    """Every applicable criterion, with PPT checked across each single-site cut."""
    reports = []
    for criterion_id in applicable_criteria(rho.n_parties):
        if criterion_id == PPT:
            cuts = [(0,)] if rho.n_parties == 2 else \
                [(k,) for k in range(rho.n_parties)]
            reports.extend(ppt(rho, cut) for cut in cuts)
        else:
            reports.append(evaluate(criterion_id, rho, obs_set))
    for report in reports:
        LOG.debug(repr(report))
    return reports
