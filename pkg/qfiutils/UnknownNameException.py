"""Exception for unknown observable names
"""
from qfiutils.QfiException import QfiException


class UnknownNameException(QfiException):
    pass
