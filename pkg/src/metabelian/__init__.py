"""Exact arithmetic in free metabelian groups.

Normal forms, collection in the commutator module, Fox derivatives, integer
codings and evaluation congruences.  See the README for a tour.
"""

from .commod import CollectedPart, RawModuleExpr, collect
from .errors import MetabelianError, ParseError
from .fox import fox_all, magnus_equal, recover_collected
from .group import (
    Element,
    commutator,
    evaluate_word,
    generator,
    identity,
    inv,
    mul,
    pow,
)
from .laurent import LaurentPoly
from .words import GroupWord, parse_element, parse_module_expr, parse_poly, parse_word, print_element

__version__ = "0.1.0"

__all__ = [
    "CollectedPart",
    "Element",
    "GroupWord",
    "LaurentPoly",
    "MetabelianError",
    "ParseError",
    "RawModuleExpr",
    "collect",
    "commutator",
    "evaluate_word",
    "fox_all",
    "generator",
    "identity",
    "inv",
    "magnus_equal",
    "mul",
    "parse_element",
    "parse_module_expr",
    "parse_poly",
    "parse_word",
    "pow",
    "print_element",
    "recover_collected",
]
