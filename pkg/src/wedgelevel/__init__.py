"""Exact algebra for exterior powers of GL_n: minors, transvection calculus,
identity verification, and level computation for nets of ideals."""

from .calculus import Tag, classify_commutator, commutator_eval, z_generator
from .congruence import (
    MembershipVerdict,
    congruence_predicates,
    congruence_wedge_membership,
    factor_decomposable,
    in_wedge_image,
    reduce_matrix,
)
from .diagram import DiagramSpec, emit_diagram
from .indexing import WedgeSpec, insert_sign, lex_rank, perm_sign
from .level import IdealNet, LevelVerdict, RuleSet, compute_level, level_of, net_init, saturate
from .matrices import ExactMatrix, commutator, determinant, minor, transvection
from .rings import FiniteIdeal, Ring, RingElement, ideal_closure, parse_ring
from .terms import Product, Transvection, WedgeTransvection, realize, t, wt
from .wedge import wedge_matrix, wedge_transvection_formula

__all__ = [
    "DiagramSpec", "ExactMatrix", "FiniteIdeal", "IdealNet", "LevelVerdict", "MembershipVerdict",
    "Product", "Ring", "RingElement", "RuleSet", "Tag", "Transvection", "WedgeSpec", "WedgeTransvection",
    "classify_commutator", "commutator", "commutator_eval", "compute_level", "congruence_predicates",
    "congruence_wedge_membership", "determinant", "emit_diagram", "factor_decomposable", "ideal_closure",
    "in_wedge_image", "insert_sign", "level_of", "lex_rank", "minor", "net_init", "parse_ring",
    "perm_sign", "realize", "reduce_matrix", "saturate", "t", "transvection", "wedge_matrix",
    "wedge_transvection_formula", "wt", "z_generator",
]
