"""State-space decomposition via invariant-neighborhood orbit hierarchies.

Finite topological systems are handled exactly (specialization preorders,
bit-set subsets); the countable ladder family is handled symbolically
with finite-window audits.  See the README for the command-line surface.
"""

from .decomposition import (
    DegreeTrace,
    Partition,
    QuotientResult,
    aorb0,
    aorb_succ,
    comparability_partition,
    degree_step,
    dim_fix,
    generated_partition,
    is_topologically_ergodic,
    min_saturated_open_nbhd,
    oracle_partition,
    prolongation_D1,
    prolongation_D2,
    quotient,
    reference_intersection,
    sorb0_partition,
    sorb_closure,
    stabilize,
)
from .ordinals import OrdinalCNF, format_ordinal, parse_ordinal
from .stability import (
    StabilityReport,
    finer_plain_stable_witness,
    finest_abs_stable_partition,
    invariant_core,
    is_absolutely_stable,
    is_stable_degree,
    stability_report,
)
from .topology import (
    FiniteSpace,
    FiniteSystem,
    PointSet,
    SelfMap,
    build_space,
    build_system,
    closure,
    interior,
    is_discrete,
    minimal_open,
    validate_map,
)

__all__ = [
    "DegreeTrace",
    "FiniteSpace",
    "FiniteSystem",
    "OrdinalCNF",
    "Partition",
    "PointSet",
    "QuotientResult",
    "SelfMap",
    "StabilityReport",
    "aorb0",
    "aorb_succ",
    "build_space",
    "build_system",
    "closure",
    "comparability_partition",
    "degree_step",
    "dim_fix",
    "finer_plain_stable_witness",
    "finest_abs_stable_partition",
    "format_ordinal",
    "generated_partition",
    "interior",
    "invariant_core",
    "is_absolutely_stable",
    "is_discrete",
    "is_stable_degree",
    "is_topologically_ergodic",
    "min_saturated_open_nbhd",
    "minimal_open",
    "oracle_partition",
    "parse_ordinal",
    "prolongation_D1",
    "prolongation_D2",
    "quotient",
    "reference_intersection",
    "sorb0_partition",
    "sorb_closure",
    "stability_report",
    "stabilize",
    "validate_map",
]
