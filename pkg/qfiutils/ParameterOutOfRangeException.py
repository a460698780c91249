"""Exception for mixing parameters and grids outside their range
"""
from qfiutils.QfiException import QfiException


class ParameterOutOfRangeException(QfiException):
    pass
