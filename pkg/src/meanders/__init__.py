"""Exact enumeration of meandric systems via non-crossing partitions.

The package enumerates meandric systems (families of closed loops
crossing a line at 2n points) as pairs of non-crossing partitions,
counts the irreducible ones by their distance/length statistics, and
recovers the generating functions and asymptotics of systems with a
fixed loop deficit through two exact series transforms.

Hot kernels run from a compiled extension when available, with a
pure-Python fallback selected at import; ``kernel_backend()`` reports
which one is active.
"""

from ._kernel import BACKEND as _BACKEND
from .meander import (
    IrreducibleTable,
    MeandricSystem,
    StatQuadruple,
    brute_meander_counts,
    brute_set_counts,
    build_irreducible_table,
    enumerate_irreducible,
    irreducible_counts_for_n,
    is_compatible,
    is_compatible_triple,
    is_irreducible,
    loop_count_algebraic,
    loop_count_geometric,
    stats_I,
    stats_K,
    stats_M,
    trace_loops,
)
from .nclat import (
    NcPartition,
    Pairing2n,
    catalan,
    enumerate_nc,
    fatten,
    format_cycles,
    iter_nc,
    join,
    kreweras,
    kreweras_inverse,
    length,
    meet,
    parse_cycles,
    perm_product_cycles,
)
from .pipeline import (
    PipelineResult,
    asymptotic_constant,
    golden_check,
    lando_zvonkin_check,
    run_pipeline,
    verify_against_brute,
)
from .series import (
    CoeffPoly,
    IntPolynomial,
    TruncSeries,
    change_var_to_w,
    extract_polynomial,
    f_transform,
    series_add,
    series_from_table,
    series_mul,
    substitute_AB_one,
)

__version__ = "0.1.0"


def kernel_backend() -> str:
    """Active kernel implementation: "cython" or "python"."""
    return _BACKEND
