"""Church-Rosser rewriting systems for star-free languages.

Compile a star-free expression to its syntactic monoid, synthesize a
finite, confluent, subword-reducing rewriting system whose quotient
recognizes the language, and check the result from several angles.
"""

from .errors import BudgetExceeded, InputError, NotAperiodicError
from .lang import compile_dfa, compile_regex, dfa_member, parse_expression, syntactic_morphism
from .monoid import (FiniteMonoid, Morphism, evaluate, is_aperiodic, local_divisor,
                     transition_monoid)
from .rees import build_rees, rees_from_trace, sigma_iso
from .rewrite import (RewriteSystem, Rule, classify_system, irreducibles, is_confluent,
                      normal_form, quotient)
from .synth import Budgets, member, synthesize, verify_synthesis
from .words import Alphabet, Word

__version__ = "0.1.0"

__all__ = [
    "Alphabet", "Word", "Rule", "RewriteSystem", "FiniteMonoid", "Morphism", "Budgets",
    "InputError", "NotAperiodicError", "BudgetExceeded",
    "classify_system", "normal_form", "is_confluent", "irreducibles", "quotient",
    "evaluate", "is_aperiodic", "local_divisor", "transition_monoid",
    "parse_expression", "compile_dfa", "compile_regex", "dfa_member", "syntactic_morphism",
    "synthesize", "verify_synthesis", "member",
    "build_rees", "rees_from_trace", "sigma_iso",
]
