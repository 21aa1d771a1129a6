"""Finite models: validation, evaluation, collapse, relative comprehensivity."""
from .evaluate import (ComprehensivityReport, Evaluator, MissingExtension, as_birelational, birel_collapse, closure,
                       closure_comprehensive, collapse_world, countermodel_check, evaluate)
from .exhaustive import (Discrepancy, ProductAlgebra, closed_formulas, collapse_discrepancies,
                         persistence_violations, value_classes)
from .models import (BirelPoint, BirelationalModel, EvalPoint, Model, ModelError, PredPoint, PredicateModel,
                     RelPoint, RelationalModel, ValidationReport, Violation, birelational, format_model, load_model,
                     parse_model, points, predicate, relational, validate_model)

__all__ = [
    "BirelPoint", "BirelationalModel", "ComprehensivityReport", "Discrepancy", "EvalPoint", "Evaluator",
    "MissingExtension", "Model", "ModelError", "PredPoint", "PredicateModel", "ProductAlgebra", "RelPoint",
    "RelationalModel", "ValidationReport", "Violation", "as_birelational", "birel_collapse", "birelational",
    "closed_formulas", "closure", "closure_comprehensive", "collapse_discrepancies", "collapse_world",
    "countermodel_check", "evaluate", "format_model", "load_model", "parse_model", "persistence_violations",
    "points", "predicate", "relational", "validate_model", "value_classes",
]
