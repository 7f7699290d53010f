"""Finite opetopic sets and opetopes: axioms, constructions, codes and enumeration."""

from .axioms import (AxiomReport, AxiomResult, IllFormed, check_boundary, check_opetopic,
                     check_pasting_diagram, is_opetope)
from .calculus import (BoundaryMismatch, TargetMismatch, degen, graft, shift, source_pd, subst,
                       unit)
from .codec import (ShapeMismatch, classify_diamond, decode, encode, pd_code, pd_to_tree,
                    shape_of, source_shapes, target_shape, tree_to_pd)
from .constructions import (Boundary, PastingDiagram, boundary, fill, opetope_of_pd, pd_target,
                            pushout, slice, source_horn)
from .core import (SOURCE, TARGET, AmbiguousRewrite, Diamond, FuelExhausted, GenArrow,
                   GraphBuilder, MissingRelation, Morphism, NormalForm, OpetopeError,
                   OpetopicGraph, ParseError, Polarity, automorphisms, find_isomorphism,
                   find_morphisms, hom, normalize)
from .document import Document, VersionError, parse, serialize
from .enumeration import (SizeBudget, count_table, enumerate_opetopes, oracle_codes,
                          oracle_enumerate)

__all__ = [
    "AmbiguousRewrite", "AxiomReport", "AxiomResult", "Boundary", "BoundaryMismatch",
    "Diamond", "Document", "FuelExhausted", "GenArrow", "GraphBuilder", "IllFormed",
    "MissingRelation", "Morphism", "NormalForm", "OpetopeError", "OpetopicGraph",
    "ParseError", "PastingDiagram", "Polarity", "SOURCE", "ShapeMismatch", "SizeBudget",
    "TARGET", "TargetMismatch", "VersionError", "automorphisms", "boundary",
    "check_boundary", "check_opetopic", "check_pasting_diagram", "classify_diamond",
    "count_table", "decode", "degen", "encode", "enumerate_opetopes", "fill",
    "find_isomorphism", "find_morphisms", "graft", "hom", "is_opetope", "normalize",
    "opetope_of_pd", "oracle_codes", "oracle_enumerate", "parse", "pd_code", "pd_target",
    "pd_to_tree", "pushout", "serialize", "shape_of", "shift", "slice", "source_horn",
    "source_pd", "source_shapes", "subst", "target_shape", "tree_to_pd", "unit",
]
