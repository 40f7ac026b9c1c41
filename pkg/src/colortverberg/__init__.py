"""Finite, exact tools for colored Tverberg problems with restricted faces."""

from .complex import (
    Coloring,
    ComplexFamily,
    LabeledPartition,
    SimplicialComplex,
    enumerate_symm_deleted_join,
    is_admissible,
    is_balanced,
    is_rainbow_balanced,
    rainbow_complex,
    simplex_skeleton,
    skeleton,
)
from .errors import InstanceError, MatchingError, PreconditionError, ResourceLimitError
from .families import make_bct_family, make_remark_counterexample
from .homology import build_chain_complex, reduced_homology_ranks, verify_connectivity_bound
from .instance import Instance, load_instance, load_points, save_instance
from .kneser import build_gamma, check_proposition, has_clique
from .morse import (
    connectivity_certificate,
    run_matching,
    verify_acyclic,
    verify_critical_census,
    verify_pi_monotone,
    verify_vector_field,
)
from .params import Parameters, compatible_sd, validate_parameters
from .pipeline import run_pipeline
from .tverberg import PointConfiguration, TverbergWitness, hulls_intersect, search_tverberg
from .unavoidability import (
    is_collectively_rs_unavoidable,
    is_r_unavoidable,
    is_rs_rainbow_unavoidable,
    is_rs_unavoidable_single,
)

__version__ = "0.1.0"
