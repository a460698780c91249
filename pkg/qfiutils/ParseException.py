"""Exception for malformed state and observable files
"""
from qfiutils.QfiException import QfiException


class ParseException(QfiException):
    pass
