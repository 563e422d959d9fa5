"""Exact invariants of mixed quiver representations.

The public surface re-exports the main types and operations; see the
README for a guided tour and the demos/ directory for worked sessions.
"""

__version__ = "0.1.0"

from .errors import QtlError
from .fields import GF, QQ
from .poly import Polynomial, PolyRing, poly_equal
from .matrices import char_poly_sigma
from .quiver import (ArrowCase, MixedDimVector, MixedQuiver, classify_arrow,
                     double_quiver, eliminate_fourth_case, loop_quiver,
                     pair_quiver, validate)
from .words import (enumerate_closed_words, format_word, is_admissible,
                    is_linked, parse_word, right_record, transpose_word, word)
from .engine import (CoordinateContext, HatLayout, Invariant, PermDatum, act,
                     contract, contract_permutation, eval_word, generator,
                     hat_quiver, multidegree_balanced, perm_in_hom,
                     specialize_dim, specialize_f, tr_star_direct,
                     verify_invariance)
from .oracle import (SpanReport, YoungLayers, invariant_dim, lie_derivations,
                     span_check, young_superclass_sum)
from .supermixed import (ReductionResult, SupermixedSpec, build_reduction,
                         make_spec, push_invariant, verify_supermixed)
from .specfile import parse_spec, parse_spec_text
