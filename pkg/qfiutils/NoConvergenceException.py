"""Exception for eigensolvers that run out of sweeps
"""
from qfiutils.QfiException import QfiException


class NoConvergenceException(QfiException):
    pass
