"""Deformations of rational homotopy types with a fixed cohomology algebra.

The controlling object is the dg Lie algebra of negative-weight derivations
of a bigraded Quillen model.  Its Maurer-Cartan ideal, obstructions, gauge
flows and transferred brackets live in the submodules.
"""

__version__ = "0.1.0"
