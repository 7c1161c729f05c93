"""Decision procedures for the sequential calculus, omega-automata with
dual-route complementation, low-Borel classification, and an exact-rational
kernel for a family of tame Cantor sets."""

from .alphabet import LetterPred, TrackAlphabet
from .classify import (
    BorelReport, LoopStructure, classify, is_closed, is_open, prefix_closed_equal,
    landweber_fsigma, landweber_gdelta, loop_structure,
)
from .compile import (
    VarEnv, check_witness, compile_formula, decide, model_check,
    model_check_qf, witness, witness_word,
)
from .complement import (
    language_equivalent, language_subset, nba_complement, nba_is_universal,
)
from .determinize import determinize
from .dpa import (
    DPA, dpa_complement, dpa_is_empty, dpa_member_up, dpa_quotient,
    dpa_reduce, dpa_to_nba,
)
from .errors import (
    CapacityExceeded, DepthExceeded, GrowthInsufficient, OmegacantorError,
    ParseError, PreconditionError, SortError, UnsupportedAcceptance,
)
from .formulas import Formula, LogicSet, parse_formula, pretty, subst_sets
from .hoa import emit_hoa, parse_hoa
from .kernel import (
    as_point, digit, digits_upto, e_trunc, mu, sign, value_approx,
    xi_threshold,
)
from .nba import NBA, Lasso, bisim_quotient, nba_is_empty, prune
from .nba import emptiness as nba_emptiness
from .nba import member_up as nba_member_up
from .nba import product as nba_product
from .nba import project as nba_project
from .nba import union as nba_union
from .nu import comp_interval, lambda_inv, nu
from .points import FormalCombo, parse_combo, point_value, render_combo, render_point
from .profiles import FORMAL, SequenceProfile
from .stages import brute_vw, enumerate_kn, nu_brute, stage_gaps, stage_intervals
from .templates import logic_set_of_kernel, template
from .upset import UPSet
from .words import UPWord

__version__ = "0.1.0"

__all__ = [
    "BorelReport", "CapacityExceeded", "DPA", "DepthExceeded", "FORMAL",
    "Formula", "FormalCombo", "GrowthInsufficient", "Lasso", "LetterPred",
    "LogicSet", "LoopStructure", "NBA", "OmegacantorError", "ParseError",
    "PreconditionError", "SequenceProfile", "SortError", "TrackAlphabet",
    "UPSet", "UPWord", "UnsupportedAcceptance", "VarEnv", "as_point",
    "bisim_quotient", "brute_vw", "check_witness", "classify",
    "comp_interval", "compile_formula", "decide", "digits_upto",
    "determinize", "digit", "dpa_complement", "dpa_is_empty",
    "dpa_member_up", "dpa_quotient", "dpa_reduce", "dpa_to_nba", "e_trunc",
    "emit_hoa", "enumerate_kn", "is_closed", "is_open",
    "landweber_fsigma", "landweber_gdelta", "language_equivalent",
    "language_subset", "lambda_inv", "logic_set_of_kernel",
    "loop_structure", "model_check", "model_check_qf", "mu",
    "nba_complement", "nba_emptiness", "nba_is_empty", "nba_is_universal",
    "nba_member_up", "nba_product", "nba_project", "nba_union", "nu",
    "nu_brute", "parse_combo", "parse_formula", "parse_hoa", "point_value",
    "prefix_closed_equal", "pretty", "prune", "render_combo", "render_point",
    "sign",
    "stage_gaps", "stage_intervals", "subst_sets", "template",
    "value_approx", "witness", "witness_word", "xi_threshold",
]
