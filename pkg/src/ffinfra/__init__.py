"""Exact arithmetic for global function fields: divisor class groups via
reduced-ideal representations, Riemann-Roch spaces, and unit lattices.

The public entry points are re-exported here; see the individual modules
for representation conventions.
"""

__version__ = "0.1.0"
