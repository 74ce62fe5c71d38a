"""Finite-stage computations around Stone duality.

Subpackages:

- ``terms``      Boolean syntax trees and the concrete grammar
- ``boolalg``    finitely presented Boolean algebras and their spectra
- ``profinite``  sequential towers of finite sets and relation graphs
- ``interval``   exact dyadic machinery for the unit interval
- ``zhomology``  integer chain complexes, Smith normal form, Cech cohomology
- ``cli``        command-line front end
"""

__version__ = "0.1.0"
