"""Hilbert systems IKt2, IKt2 with native diamonds, and Kt2: proofs, checker, lemma bank."""
from .axioms import SYSTEMS
from .lemmas import BANK, default_params, derive_lemma, lemma_statement, lemma_term
from .negative import lift_kt2_proof
from .proof import HilbertProof, Line, ProofError, accepts, check_proof, dumps, loads
from .terms import Builder, TermError

__all__ = [
    "BANK", "Builder", "HilbertProof", "Line", "ProofError", "SYSTEMS", "TermError", "accepts", "check_proof",
    "default_params", "derive_lemma", "dumps", "lemma_statement", "lemma_term", "lift_kt2_proof", "loads",
]
