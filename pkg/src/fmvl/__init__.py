"""Exact-arithmetic toolkit for fuzzy many-valued logic with product and scalars.

Formulas, polynomial components, grid model checking, a formula compiler for
truncated polynomials and max-min combinations, and a derivation checker.
"""

__version__ = "0.1.0"

from .compiler import ISDSpec, compile_isd, compile_truncated, verify_compile
from .components import ComponentSet, component_bound, components, verify_components
from .formula import ParseError, free_vars, max_var, parse, size, to_sexpr
from .models import GridSpec, Verdict, check_identity, check_quasi_identity, eval_pair, eval_std
from .polynomial import Polynomial, decompose, format_poly, parse_poly, recompose
from .proofs import AXIOMS, check_derivation, is_axiom_instance, load_derivation, soundness_spot_check

__all__ = [
    "ISDSpec", "compile_isd", "compile_truncated", "verify_compile",
    "ComponentSet", "component_bound", "components", "verify_components",
    "ParseError", "free_vars", "max_var", "parse", "size", "to_sexpr",
    "GridSpec", "Verdict", "check_identity", "check_quasi_identity", "eval_pair", "eval_std",
    "Polynomial", "decompose", "format_poly", "parse_poly", "recompose",
    "AXIOMS", "check_derivation", "is_axiom_instance", "load_derivation", "soundness_spot_check",
]
