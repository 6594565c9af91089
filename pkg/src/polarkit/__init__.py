"""Exact computations on finite classical polar spaces: point enumeration,
semisimilarity orbits, intriguing-set classification (tight sets and
m-ovoids), field reduction, and a small zoo of two-orbit constructions.

All arithmetic is exact; nothing in this package ever compares within a
tolerance.
"""

from . import (constructions, fieldred, forms, gf, group, intriguing,
               manifest, polar)
from .forms import Form, FormKind, Subspace, classify_restriction, perp
from .group import GeneratorSet, OrbitPartition, Semisimilarity, orbits
from .intriguing import IntriguingReport, classify, feasibility, zsigmondy
from .polar import PointSet, PolarSpace, build, full_set, perp_residual

__version__ = "0.1.0"

__all__ = [
    "Form", "FormKind", "GeneratorSet", "IntriguingReport", "OrbitPartition",
    "PointSet", "PolarSpace", "Semisimilarity", "Subspace", "build",
    "classify", "classify_restriction", "constructions", "feasibility",
    "fieldred", "forms", "full_set", "gf", "group", "intriguing", "manifest",
    "orbits", "perp", "perp_residual", "polar", "zsigmondy", "__version__",
]
