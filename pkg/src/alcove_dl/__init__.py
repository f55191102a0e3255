"""Exact alcove combinatorics for twisted products of general linear groups:
affine Weyl group orders, generic decomposition patterns, covering
parameter constructions, admissible sets, and brute-force verifiers."""

from .root_datum import RootDatum, gl, format_weight, parse_weight
from .affine_weyl import (
    AffineElt,
    Alcove,
    adm_contains,
    alcove_key,
    bruhat_leq,
    elt_str,
    enumerate_restricted,
    enumerate_up_below,
    identity,
    is_dominant_elt,
    is_restricted_elt,
    length,
    omega_component,
    p_alcove_of,
    parse_elt,
    reflection,
    restricted_transversal,
    translation,
    up_leq,
    vertex_hmax,
    w_h,
    weight_up,
    weyl_elt,
)
from .dl_decomposition import (
    DLPresentation,
    EliminationReport,
    JHFactor,
    WeightClass,
    admissible_pair,
    baby_verma_nonzero,
    covering_types,
    eliminate,
    hom_nu_set,
    jh_factors,
    presentation_equivalent,
    r_operator,
    w_question,
)
from .oracles import (
    TrialReport,
    bruhat_subword_oracle,
    conv_oracle,
    up_order_oracle,
    verify_apriori,
    verify_barycenter,
    verify_convex,
    verify_facet,
    verify_lap,
    verify_packet,
    verify_presentation,
    verify_section5,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
