"""
Test Package for LieVerify
Unit tests and property tests for the backend modules
"""

__version__ = "1.0.0"
