"""Verification toolkit for finitely presented groups.

Free-group words, presentation parsing and Tietze transformations,
Todd-Coxeter coset enumeration, Smith-normal-form first homology,
consequence certificates, and a frozen scenario corpus tying them together.
"""

__version__ = "0.1.0"

from .words import (  # noqa: E402
    CONVENTION_DEFAULT,
    CONVENTION_GAP,
    CONVENTIONS,
    Word,
    commutator,
    conjugate,
    cyclic_reduce,
    free_reduce,
    invert,
    substitute,
)
from .presentation import (  # noqa: E402
    NoDefiningRelator,
    ParseError,
    Presentation,
    abelianized_relation_matrix,
    eliminate_generator,
    load_presentation_file,
    parse_presentation,
    parse_word,
    print_presentation,
    replay_moves,
    simplify,
)
from .coset import (  # noqa: E402
    DEFAULT_MAX_COSETS,
    STRATEGIES,
    CosetTable,
    EnumerationResult,
    enumerate_cosets,
    permutation_action,
    verify_trivial,
)
from .snf import H1, SmithForm, homology_h1, smith_normal_form  # noqa: E402
from .certificates import (  # noqa: E402
    Certificate,
    Derivation,
    Factor,
    NotFound,
    check_equivalence,
    derivation_to_certificate,
    derive_all,
    derive_by_collapse,
    search_certificate,
    verify_certificate,
    verify_derivation,
)
from .corpus import Scenario, list_scenarios, load_scenario  # noqa: E402
from .verify import RunReport, StepResult, run_all, run_scenario  # noqa: E402

__all__ = [
    "CONVENTIONS", "CONVENTION_DEFAULT", "CONVENTION_GAP",
    "Certificate", "CosetTable", "DEFAULT_MAX_COSETS", "Derivation",
    "EnumerationResult", "Factor", "H1", "NoDefiningRelator", "NotFound",
    "ParseError", "Presentation", "RunReport", "STRATEGIES", "Scenario",
    "SmithForm", "StepResult", "Word", "abelianized_relation_matrix",
    "check_equivalence", "commutator", "conjugate", "cyclic_reduce",
    "derivation_to_certificate", "derive_all", "derive_by_collapse",
    "eliminate_generator", "enumerate_cosets", "free_reduce", "homology_h1",
    "invert", "list_scenarios", "load_presentation_file", "load_scenario",
    "parse_presentation", "parse_word", "permutation_action",
    "print_presentation", "replay_moves", "run_all", "run_scenario",
    "search_certificate", "simplify", "smith_normal_form", "substitute",
    "verify_certificate", "verify_derivation", "verify_trivial",
]
