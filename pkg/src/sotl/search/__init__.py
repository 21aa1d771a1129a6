"""Bounded cut-free proof search with branch reports."""
from .activities import Activity, SearchConfig, apply_macro, schedule, witness_candidates
from .engine import Exhausted, Proved, SearchResult, prove_classical, prove_intuitionistic
from .report import BranchReport, Clause, ClauseSummary, branch_report_check

__all__ = ["Activity", "SearchConfig", "apply_macro", "schedule", "witness_candidates", "Exhausted", "Proved",
           "SearchResult", "prove_classical", "prove_intuitionistic", "BranchReport", "Clause", "ClauseSummary",
           "branch_report_check"]
