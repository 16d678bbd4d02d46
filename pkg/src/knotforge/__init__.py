"""knotforge: knot invariants, unit-circle zero analysis, representation deformation."""

from .braid import BraidWord, FreeWord, KnotPresentation, act, alexander_from_braid, permutation, presentation
from .catalog import KnotRecord, bundled_catalog, bundled_record, load_records
from .circle_zeros import (CircleZero, CriterionVerdict, UnitCircleZeroReport,
                           criterion_odd_order, has_odd_order_unit_zero,
                           is_lspace_form, km_holds_at, km_inequality,
                           squarefree_decomposition, unit_circle_zeros)
from .invariants import (SeifertMatrix, SignatureProfile, alexander_from_seifert,
                         knot_determinant, lt_signature, mod4_criterion,
                         murasugi_signature, pretzel_determinant, signature_profile)
from .laurent import (LaurentPoly, PalindromicForm, UnitAngle, chebyshev_transform,
                      conway_normalize, evaluate, exact_div, to_palindromic)
from .repspace import (CharacterCoords, DeformationPath, RepPoint,
                       abelian_character, abelian_elliptic_rep, character_coords,
                       character_words, classify_real_character, deform,
                       distinct_characters, irreducibility_margin, relator_residual)

__version__ = "0.1.0"
