"""Adiabatic-impulse approximation toolkit.

Numerical library for quantifying how well the adiabatic approximation and
its adiabatic-impulse variant track the exact evolution of driven quantum
systems: a two-level avoided crossing, a transverse-field Ising chain in its
free-fermion form, and a thermally damped qubit governed by a Davies-form
Lindblad generator.
"""

from . import intertwiner, lindblad_open, lz_closed, numkit, sweeps, tfi

__all__ = ["numkit", "lz_closed", "tfi", "lindblad_open", "intertwiner", "sweeps"]
__version__ = "0.1.0"
