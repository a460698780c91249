"""Exception for matrices that fail the Hermiticity check
"""
from qfiutils.QfiException import QfiException


class NotHermitianException(QfiException):
    pass
