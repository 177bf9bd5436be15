"""Finite-category workbench: adjoints, Kan extensions, internal categories,
lambda-calculus connectives and consequence closures over explicit tables."""

from .core import (  # noqa: F401
    CapExceeded, FiniteCategory, FiniteGraph, Functor, NaturalTransformation,
    StructureError, ValidationReport, WorkbenchError, build_category,
    coproduct_category, discrete_category, enumerate_functors,
    enumerate_nat_trans, functor_category, hom_set, opposite,
    product_category, terminal_category, validate_category,
)

__version__ = "0.1.0"
