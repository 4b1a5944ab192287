"""Pushouts of difunctional spans over finite sets, with machine-checkable
certificates that each square is a pushout, a pullback, and stable under
pullback; plus the same layer for finite pointed sets."""

from .certificates import (
    FiberReport,
    PushoutCertificate,
    Verdict,
    certify,
    effectiveness_check,
    is_pullback_square,
    is_pushout_square,
    is_stable_pushout,
    jointly_epic,
)
from .errors import (
    CompositionError,
    InternalInvariantError,
    NotEpiError,
    NotEquivalenceError,
    NotJointlyMonicError,
    NotMalcevError,
    NotMonoError,
    ParseError,
    PreconditionError,
)
from .fsets import (
    CommutativeSquare,
    Cospan,
    FiniteSet,
    SetFunction,
    Span,
    canonical_comparison,
    compose,
    coproduct,
    fset,
    identity,
    image_factorization,
    is_epi,
    is_iso,
    is_mono,
    kernel_pair,
    pullback,
    span,
)
from .pointed import (
    PointedMap,
    PointedSet,
    PointedSpan,
    pointed_malcev_pushout,
    zero_object_checks,
)
from .pushouts import (
    DecompositionTrace,
    MalcevPushoutResult,
    coequalizer_via_pushout,
    coproduct_via_pushout,
    malcev_pushout_decomposed,
    malcev_pushout_direct,
    pushout_epi_leg,
    subobject_union,
)
from .relations import (
    BlockRelation,
    Relation,
    assemble_block,
    converse,
    difunctional_closure,
    graph_of,
    is_difunctional,
    is_equivalence,
    is_malcev_span,
    leq,
    quotient_by_equivalence,
    rel_compose,
    span_to_relation,
    tabulate,
    union,
)
from .suites import SuiteConfig, pointed_diexact_suite, run_all_suites, theorem_suites

__version__ = "0.1.0"

__all__ = [
    "BlockRelation",
    "CommutativeSquare",
    "CompositionError",
    "Cospan",
    "DecompositionTrace",
    "FiberReport",
    "FiniteSet",
    "InternalInvariantError",
    "MalcevPushoutResult",
    "NotEpiError",
    "NotEquivalenceError",
    "NotJointlyMonicError",
    "NotMalcevError",
    "NotMonoError",
    "ParseError",
    "PointedMap",
    "PointedSet",
    "PointedSpan",
    "PreconditionError",
    "PushoutCertificate",
    "Relation",
    "SetFunction",
    "Span",
    "SuiteConfig",
    "Verdict",
    "assemble_block",
    "canonical_comparison",
    "certify",
    "coequalizer_via_pushout",
    "compose",
    "converse",
    "coproduct",
    "coproduct_via_pushout",
    "difunctional_closure",
    "effectiveness_check",
    "fset",
    "graph_of",
    "identity",
    "image_factorization",
    "is_difunctional",
    "is_epi",
    "is_equivalence",
    "is_iso",
    "is_malcev_span",
    "is_mono",
    "is_pullback_square",
    "is_pushout_square",
    "is_stable_pushout",
    "jointly_epic",
    "kernel_pair",
    "leq",
    "malcev_pushout_decomposed",
    "malcev_pushout_direct",
    "pointed_diexact_suite",
    "pointed_malcev_pushout",
    "pullback",
    "pushout_epi_leg",
    "quotient_by_equivalence",
    "rel_compose",
    "run_all_suites",
    "span",
    "span_to_relation",
    "subobject_union",
    "tabulate",
    "theorem_suites",
    "union",
    "zero_object_checks",
]
