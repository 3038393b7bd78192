"""latkit: finite-lattice computations at desk scale.

Finite bounded lattices with precomputed tables, generated-sublattice
closures with term witnesses, congruences and quotients, two-sided gluings,
an exact symbolic model of the herringbone lattice and its selfdual double,
an atlas of all small lattices up to isomorphism, and a CLI that verifies
the package's headline claims (`latkit check-paper`).
"""

__version__ = "0.1.0"
