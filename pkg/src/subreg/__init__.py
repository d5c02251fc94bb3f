"""Subsequential transducers and tier-based strictly local function classes."""

from .core import LB, Action, Tier, ksuffix, lcp, parse_action, show, strings_upto, tier_apply, word
from .errors import (AlphabetMismatch, EmptyLcpSet, ExactUnsupported, NotInClass, NotTotal, ParseError,
                     SearchTooLarge, ShapeUnverifiable, SubregError, UnknownSymbol, UnmappedSegment)
from .sfst import (Sfst, actions_of_machine, equivalent, is_onward, isomorphic, make_onward, minimize,
                   onward_violation, run_trace, transduce)
from .formats import load, parse, save, serialize, to_dot
from .views import FormulaHandle, FunctionHandle, actions_of_function, f_top, run_of, translation_apply
from .classes import (LocalityParams, Verdict, brute_check_tiosl, brute_check_tssl, build_canonical_tiosl,
                      build_canonical_tssl, check_tiosl, check_tssl, lift_tier_input, lift_tier_output,
                      search_tiers, shape_check_tiosl, shape_check_tssl)
from .decompose import Homomorphism, decompose, hom_apply
from .machines import builtin, builtins, reduction_direct, rs_direct, transliterate

__version__ = "0.1.0"
