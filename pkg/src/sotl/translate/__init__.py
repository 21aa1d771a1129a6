"""Labelled proofs into Hilbert proofs: interpretations, formula contexts, compilation."""
from .compile import labelled_to_hilbert
from .contexts import (AndCtx, BBoxCtx, BDiaCtx, BoxCtx, CONTEXT_LEMMAS, Decomposition, DiaCtx, Hole, ImpCtx,
                       context_lemma, decompose, plug, swap)
from .trees import TranslateError, classical_interp, interp, intuitionistic_interp, left_interp, right_interp

__all__ = [
    "AndCtx", "BBoxCtx", "BDiaCtx", "BoxCtx", "CONTEXT_LEMMAS", "Decomposition", "DiaCtx", "Hole", "ImpCtx",
    "TranslateError", "classical_interp", "context_lemma", "decompose", "interp", "intuitionistic_interp",
    "labelled_to_hilbert", "left_interp", "plug", "right_interp", "swap",
]
