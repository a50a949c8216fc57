"""Operads of words over monoids, their suboperads, presentations and bijections."""

from .bijections import (
    KLeafyTree,
    MotzkinPrefix,
    MotzkinWord,
    PlanarRootedTree,
    RibbonDiagram,
    SchroderTree,
    SegmentedComposition,
    object_to_word,
    word_to_object,
)
from .families import (
    Family,
    Zero,
    enumerate_by_membership,
    enumerate_family,
    generate_by_arity,
    hilbert_prefix,
    member,
    parse_family,
    per_partial_graft,
)
from .monoid import ADDITIVE, MULTIPLICATIVE, MonoidElement, MonoidMorphism, MonoidSpec, parse_monoid
from .presentations import Presentation, catalog, check_relation_soundness, verify_presentation
from .rewriting import RewriteRule, RewriteSystem, normalize, parse_rules, rewrite_step_all
from .trees import LEAF, GradedSymbol, Node, evaluate, format_tree, graft_tree, parse_tree
from .words import OperadWord, Permutation, act, check_axioms, complete_graft, graft, parse_word, pm_graft

__all__ = [
    "ADDITIVE",
    "LEAF",
    "MULTIPLICATIVE",
    "Family",
    "GradedSymbol",
    "KLeafyTree",
    "MonoidElement",
    "MonoidMorphism",
    "MonoidSpec",
    "MotzkinPrefix",
    "MotzkinWord",
    "Node",
    "OperadWord",
    "Permutation",
    "PlanarRootedTree",
    "Presentation",
    "RewriteRule",
    "RewriteSystem",
    "RibbonDiagram",
    "SchroderTree",
    "SegmentedComposition",
    "Zero",
    "act",
    "catalog",
    "check_axioms",
    "check_relation_soundness",
    "complete_graft",
    "enumerate_by_membership",
    "enumerate_family",
    "evaluate",
    "format_tree",
    "generate_by_arity",
    "graft",
    "graft_tree",
    "hilbert_prefix",
    "member",
    "normalize",
    "object_to_word",
    "parse_family",
    "parse_monoid",
    "parse_rules",
    "parse_tree",
    "parse_word",
    "per_partial_graft",
    "pm_graft",
    "rewrite_step_all",
    "verify_presentation",
    "word_to_object",
]
