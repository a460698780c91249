"""Exception for density matrices that are not states
"""
from qfiutils.QfiException import QfiException


class InvariantViolationException(QfiException):
    pass
