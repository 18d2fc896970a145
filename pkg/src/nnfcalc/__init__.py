"""Refutability checking for first-order formulas in negation normal form via
a small rewrite calculus with checkable certificates."""

from .calculus import (
    Certificate, Derivation, RuleError, apply_rule, is_explicit_contradiction,
    verify_certificate,
)
from .decision import Decision, Verdict, decide_foldnf, decide_psi, decide_wedge_nnf
from .formula import Var, var
from .normal import rectify, to_foldnf, to_nnf
from .pipeline import connected_pairs, em_optimize, extract_subformula, minimize_scopes
from .pruner import dinonwid_check, prune, unifiable_pairs
from .syntax import ParseError, parse, to_text

__all__ = [
    "Certificate", "Decision", "Derivation", "ParseError", "RuleError", "Var",
    "Verdict", "apply_rule", "connected_pairs", "decide_foldnf", "decide_psi",
    "decide_wedge_nnf", "dinonwid_check", "em_optimize", "extract_subformula",
    "is_explicit_contradiction", "minimize_scopes", "parse", "prune", "rectify",
    "to_foldnf", "to_nnf", "to_text", "unifiable_pairs", "var", "verify_certificate",
]
