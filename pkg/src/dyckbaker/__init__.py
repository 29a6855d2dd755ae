"""Periodic points of the Dyck shift and the heterochaos baker maps.

Core pieces: bracket-word reduction and periodic admissibility (words),
pruned enumeration with exact closed-form counts (enumeration), the two
ergodic maximal-entropy measures on cylinders via the collapse/decorate
embeddings (krieger), empirical distributions of periodic ensembles
(measures), exact-rational orbit solving for the piecewise-affine baker
maps (baker), and independent brute-force oracles (oracle). Hot loops run
on a compiled kernel with a pure-Python fallback (_kernels).
"""

__version__ = "0.1.0"

from .words import (  # noqa: F401
    Alphabet,
    PeriodClass,
    ReducedForm,
    Symbol,
    Word,
    asymptotic_class,
    format_word,
    height,
    is_periodic_point,
    left,
    mirror,
    parse_word,
    reduce_word,
    right,
    rotate,
)
from .enumeration import (  # noqa: F401
    CountReport,
    PeriodicSetQuery,
    count_closed_form,
    count_enumerated,
    count_report,
    enumerate_periodic,
    verify_count_bounds,
)
