"""
Harmonic information: circuit depth, synchronization and mutual information of
coupled oscillators, and fidelity, complexity and nonadiabaticity of ion transport.
"""

__version__ = "0.1.0"
