"""Entanglement detection from quantum Fisher information and variance.
"""
