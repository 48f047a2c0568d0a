"""Computable sofically presented dynamical systems."""
