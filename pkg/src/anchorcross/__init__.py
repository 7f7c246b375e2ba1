"""anchorcross: exact anchored / almost-planar crossing-number toolkit.

Library layout:
  omega      exact sparse omega-polynomials (all weights and totals)
  graph      weighted multigraphs, anchored / PP instances, CNF
  planarity  planarity tests, rotation systems, disk augmentation
  solver     exact crossing-number search, min cuts, PP special cases
  frame      the 3+3-anchor frame gadget and its closed-form optimum
  cmgadget   the refined SAT reduction and the frame composition
  transform  anchored -> almost-planar pipeline (walls, multicycle, blow-up)
  fixtures   small instances used in docs and tests
  gio        graph JSON / DIMACS parsing and serialization
  render     DOT / SVG output
"""

from .omega import (OmegaPoly, W, poly_add, poly_cmp_large_omega, poly_eval,
                    poly_mul)
from .graph import (AnchoredInstance, CnfFormula, PPInstance,
                    WeightedMultigraph, expand_weights, validate_pp)
from .planarity import (FaceList, RotationSystem, augment_anchored, faces,
                        is_anchored_planar, is_planar)
from .solver import (Planarization, SolveResult, anchored_crossing_number_exact,
                     crossing_number_exact, decide_crossing_le, derived_graph,
                     drawing_weight, min_cut, pp_special_case, verify_drawing)

__all__ = [
    "OmegaPoly", "W", "poly_add", "poly_mul", "poly_eval",
    "poly_cmp_large_omega",
    "WeightedMultigraph", "AnchoredInstance", "PPInstance", "CnfFormula",
    "expand_weights", "validate_pp",
    "RotationSystem", "FaceList", "is_planar", "faces", "augment_anchored",
    "is_anchored_planar",
    "Planarization", "SolveResult", "drawing_weight", "verify_drawing",
    "derived_graph", "crossing_number_exact", "decide_crossing_le",
    "anchored_crossing_number_exact", "min_cut", "pp_special_case",
]

__version__ = "0.1.0"
