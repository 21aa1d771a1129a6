"""Proof checking, proof search and model checking for second-order tense logic."""
import sys

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))
