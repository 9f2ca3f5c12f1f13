"""Exact integer arithmetic for the coefficient families of F(x)^t, where
F(x) = prod_{n>=0} (1 - x^(2^n)) generates the Prouhet-Thue-Morse sequence.

Everything here is exact (Python big integers and fractions); there is no
floating point anywhere in the computational paths.
"""

__version__ = "0.1.0"
