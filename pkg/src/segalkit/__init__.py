"""segalkit: a desk-scale toolkit for finite Segal precategories.

Finite simplicial sets and bisimplicial sets with a discrete object level
are presented by their non-degenerate generators.  On top of that core the
package provides the standard generating morphisms (spine inclusions,
filler arrows, corner inclusions), bounded cell-addition plans with
markings, truncation functors to finite categories, and homotopy oracles
(connected components, integral homology, edge-path fundamental groups).
"""

from .errors import BudgetError, SegalkitError, StructureError
from .sset import El, FiniteSimplicialSet, SSetMap, boundary, standard_simplex
from .precat import BiEl, Precategory, PrecatMap

__all__ = [
    "BiEl",
    "BudgetError",
    "El",
    "FiniteSimplicialSet",
    "Precategory",
    "PrecatMap",
    "SegalkitError",
    "SSetMap",
    "StructureError",
    "boundary",
    "standard_simplex",
]

__version__ = "0.1.0"
