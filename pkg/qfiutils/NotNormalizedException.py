"""Exception for state vectors without unit norm
"""
from qfiutils.QfiException import QfiException


class NotNormalizedException(QfiException):
    pass
