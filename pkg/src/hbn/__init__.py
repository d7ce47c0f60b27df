"""Splitting-type combinatorics of Brill-Noether loci on general k-gonal curves."""

from .completion import (
    CompletionResult,
    balanced_fill,
    complete,
    completed,
    completion_threshold_E,
    in_open_stratum,
    threshold_index,
)
from .components import (
    BalancedType,
    Component,
    ComponentClass,
    balanced_plus_balanced,
    component_class,
    component_report,
    components_containing,
    components_of_W,
    in_V,
    make_component,
    threshold,
    v_parameters,
    w_membership,
)
from .core import (
    CurveParams,
    SplittingSequence,
    dim_sigma,
    dominates,
    h0,
    h1,
    make_sequence,
    pencil_trick_image_dim,
    petri_injective,
    r_of_n,
    rho,
    u_invariant,
)
from .errors import HBNError
from .smoothness import (
    Ambient,
    Justification,
    Reason,
    Status,
    TranslateDichotomy,
    Verdict,
    certified_smooth_in_closure,
    classify_in_W,
    classify_on_v_locus,
    level_step_equations,
    local_equation_count,
    local_fitting_levels,
    run_smoothing_pairs,
    translate_smoothness,
    type_i_second_component,
    type_i_smooth_locus,
    type_i_unique_singular_witness,
    type_ii_smooth,
)
from .strata import HasseDiagram, StratificationTable, enumerate_types, hasse_diagram, in_closure, specializations

__version__ = "0.1.0"
