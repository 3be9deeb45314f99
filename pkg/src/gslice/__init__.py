"""Galois slicing as automatic differentiation."""
