"""Signal that a criterion never detects entanglement on [0, 1]
"""
from qfiutils.QfiException import QfiException


class NoViolationException(QfiException):
    pass
