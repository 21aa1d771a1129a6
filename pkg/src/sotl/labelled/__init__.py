"""Labelled sequents, the calculi LKt2, LIKt2 and MLIKt2, and proof transformations."""
from .proof import CALCULI, LabelledProofError, Node, accepts, check_labelled_proof, dumps, loads
from .sequent import Sequent, is_polytree, parse_lf, parse_sequent, show_lf, show_sequent
from .transforms import (TransformError, bottom_derivation, classical_to_negneg, identity, multi_to_single,
                         weaken_left, weaken_right)

__all__ = [
    "CALCULI", "LabelledProofError", "Node", "Sequent", "TransformError", "accepts", "bottom_derivation",
    "check_labelled_proof", "classical_to_negneg", "dumps", "identity", "is_polytree", "loads", "multi_to_single",
    "parse_lf", "parse_sequent", "show_lf", "show_sequent", "weaken_left", "weaken_right",
]
