"""Exact computations on Newton bodies built from points and tail sequences.

A body is ``conv(generators) + R^n_+`` where generators are finitely many
rational points together with tail sequences ``p + q*j + r/j``.  The package
answers membership, gauge, monomial-ideal, asymptote, and cluster-point
queries about such bodies in exact rational arithmetic, every verdict backed
by an independently checkable certificate.
"""

from .asymptotes import (AsympReport, AsymptoticVerdict, CoordinateSubspace,
                         InconsistencyError, enumerate_asymp, is_asymptotic,
                         largest_asymp_closure, satisfies_star, subspace)
from .bodies import (cusp_body, example_bodies, hyperbola_body,
                     hyperbola_prism, shifted_hyperbola_body)
from .body import (BodyValidationError, GeneratorFamily, TailSequence, family,
                   from_weight_terms, project, scale, support, tail, truncate)
from .bodyfile import (BodyParseError, body_hash, load_body, parse_body,
                       save_body, serialize_body)
from .cluster import (ClusterPointVerdict, ClusterProgression, ClusterReport,
                      WitnessPoint, cluster_points, is_cluster_point,
                      witness_sequence)
from .exact import EpsRational, format_rat, format_vec, rat, vec
from .gauge import (FacetWitness, GaugeInfinite, GaugeValue, JumpingReport,
                    LimitWitness, gauge, jumping_numbers_up_to, oracle_gauge)
from .ideal import MonomialIdeal, contains_monomial, minimal_generators
from .membership import (InteriorWitness, MembershipVerdict, SeparatingNormal,
                         Undecided, dominates_all, is_attained, is_in_closure,
                         is_interior, verify_attained, verify_closure,
                         verify_interior)
from .plot import plot_slice

__version__ = "0.1.0"

__all__ = [
    "AsympReport", "AsymptoticVerdict", "BodyParseError",
    "BodyValidationError", "ClusterPointVerdict", "ClusterProgression",
    "ClusterReport", "CoordinateSubspace", "EpsRational", "FacetWitness",
    "GaugeInfinite", "GaugeValue", "GeneratorFamily", "InconsistencyError",
    "InteriorWitness", "JumpingReport", "LimitWitness", "MembershipVerdict",
    "MonomialIdeal", "SeparatingNormal", "TailSequence", "Undecided",
    "WitnessPoint", "body_hash", "cluster_points", "contains_monomial",
    "cusp_body", "dominates_all", "enumerate_asymp", "example_bodies",
    "family", "format_rat", "format_vec", "from_weight_terms", "gauge",
    "hyperbola_body", "hyperbola_prism", "is_asymptotic", "is_attained",
    "is_cluster_point", "is_in_closure", "is_interior",
    "jumping_numbers_up_to", "largest_asymp_closure", "load_body",
    "minimal_generators", "oracle_gauge", "parse_body", "plot_slice",
    "project", "rat", "satisfies_star", "save_body", "scale",
    "serialize_body", "shifted_hyperbola_body", "subspace", "support",
    "tail", "truncate", "vec", "verify_attained", "verify_closure",
    "verify_interior", "witness_sequence",
]
