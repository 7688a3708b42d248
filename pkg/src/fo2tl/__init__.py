"""fo2tl: compile first-order monadic logic of order into temporal
logic over strict Until/Since, and verify the result against a
brute-force finite-chain oracle."""

from . import fo, tl
from .chains import (
    Assignment,
    Chain,
    ChainFormatError,
    Counterexample,
    EquivResult,
    EvalError,
    check_equiv_fo_tl,
    enumerate_chains,
    eval_fo,
    eval_tl,
    format_chain,
    parse_chain,
    random_chain,
    reverse_chain,
)
from .fo import FoFormula, free_vars, print_fo
from .normal_form import (
    Dea,
    EaFormula,
    ScopeError,
    VariableOrder,
    dea_size,
    ea_and,
    ea_exists,
    ea_split_pairs,
    embed,
    eval_dea,
    eval_ea,
    false_dea,
    format_dea,
    format_ea,
    simplify,
    top_dea,
)
from .parse import ParseError, parse_fo, parse_tl
from .tl import TlFormula, print_tl, sexpr_tl
from .tl import mirror as mirror_tl
from .translate import (
    ArityError,
    BudgetExceeded,
    IntervalPattern,
    TranslationTrace,
    case_conditions,
    dea1_to_tl,
    ea1_to_tl,
    fo_to_dea,
    fo_to_tl,
    inf_pattern,
    neg_dea,
    neg_ea2,
    neg_exists_between_left,
    neg_exists_between_right,
    neg_interval,
    oc,
    translate_with_trace,
)

__version__ = "0.1.0"

__all__ = [
    "Assignment",
    "ArityError",
    "BudgetExceeded",
    "Chain",
    "ChainFormatError",
    "Counterexample",
    "Dea",
    "EaFormula",
    "EquivResult",
    "EvalError",
    "FoFormula",
    "IntervalPattern",
    "ParseError",
    "ScopeError",
    "TlFormula",
    "TranslationTrace",
    "VariableOrder",
    "case_conditions",
    "check_equiv_fo_tl",
    "dea1_to_tl",
    "dea_size",
    "ea1_to_tl",
    "ea_and",
    "ea_exists",
    "ea_split_pairs",
    "embed",
    "enumerate_chains",
    "eval_dea",
    "eval_ea",
    "eval_fo",
    "eval_tl",
    "false_dea",
    "fo",
    "fo_to_dea",
    "fo_to_tl",
    "format_chain",
    "format_dea",
    "format_ea",
    "free_vars",
    "inf_pattern",
    "mirror_tl",
    "neg_dea",
    "neg_ea2",
    "neg_exists_between_left",
    "neg_exists_between_right",
    "neg_interval",
    "oc",
    "parse_chain",
    "parse_fo",
    "parse_tl",
    "print_fo",
    "print_tl",
    "random_chain",
    "reverse_chain",
    "sexpr_tl",
    "simplify",
    "tl",
    "top_dea",
    "translate_with_trace",
]
