"""Formula syntax, sizes, evaluators and generators for the modal and first-order sides."""

from . import fo
from .fo import FOFormula, SizeConvention, eval_fo, fo_size, make_phi, make_psi, print_fo
from .ml import (
    BOT,
    TOP,
    And,
    Bot,
    Box,
    Diamond,
    MLFormula,
    NegProp,
    Or,
    ParseError,
    Prop,
    SizeReport,
    Top,
    enumerate_ml,
    eval_ml,
    ml_sizes,
    modal_depth,
    parse_ml,
    print_ml,
    prop_names,
    separates,
)

__all__ = [
    "fo",
    "FOFormula",
    "SizeConvention",
    "eval_fo",
    "fo_size",
    "make_phi",
    "make_psi",
    "print_fo",
    "BOT",
    "TOP",
    "And",
    "Bot",
    "Box",
    "Diamond",
    "MLFormula",
    "NegProp",
    "Or",
    "ParseError",
    "Prop",
    "SizeReport",
    "Top",
    "enumerate_ml",
    "eval_ml",
    "ml_sizes",
    "modal_depth",
    "parse_ml",
    "print_ml",
    "prop_names",
    "separates",
]
