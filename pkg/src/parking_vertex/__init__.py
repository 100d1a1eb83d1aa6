"""Coloured-mode algebras, their admissible normal forms and a lattice Fock-space oracle."""

__version__ = "0.1.0"
