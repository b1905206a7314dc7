"""
Test Suite for the k-Symplectic Lagrangian Toolkit

Includes unit tests, property tests, CLI tests and catalog acceptance checks.
"""
