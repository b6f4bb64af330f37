"""
LieVerify Backend Package
Exact constructions and lemma checks for the conformal-action classification
"""

__version__ = "1.0.0"
__author__ = "LieVerify Team"
