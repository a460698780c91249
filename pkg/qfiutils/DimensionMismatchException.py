"""Exception for subsystem dimensions that do not fit a matrix
"""
from qfiutils.QfiException import QfiException


class DimensionMismatchException(QfiException):
    pass
