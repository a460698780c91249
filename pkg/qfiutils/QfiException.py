"""Base exception for entanglement criteria computations
"""
class QfiException(Exception):
    pass
