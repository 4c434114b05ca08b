"""Alloy models to fork-algebra equations.

Every function takes model source text. ``mode="rl"`` reads relational-logic
input (``rel R : A -> B;`` declarations followed by one formula).
"""

from ._core import AlloyError, check, check_laws, latex, prover9, read_prover9, translate

__all__ = ["AlloyError", "check", "check_laws", "latex", "prover9", "read_prover9", "translate"]
