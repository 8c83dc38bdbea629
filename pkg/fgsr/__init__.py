"""
Subword counts of cyclic words under free group automorphisms.

For an automorphism φ of F_n and a reduced word u, the number of times u
occurs in φ(w) is a fixed integer combination of the counts of finitely
many words in w.  This package computes those combinations (minimal full
sets), assembles them into a tower of integer matrices, and works with the
module tower they act on.

Usage example:

>>> from fgsr import Automorphism, full_set, parse_moves, parse_word
>>> from fgsr import canon_uword
>>> phi = Automorphism(3, parse_moves("R(x,y)", 3))
>>> len(full_set(canon_uword(parse_word("y", 3)), phi))
8
"""

from .words import UWord, CyclicWord, Orientation, canon_uword, \
    canon_cyclic, enumerate_basis, hom_count_cyclic, hom_count_segment
from .autom import Automorphism, NielsenMove, MoveKind, compose, invert, \
    decompose, inner_twist
from .syntax import parse_word, parse_moves, format_word, format_moves
from .preimage import FullSet, IdealPreimage, full_set
from .zmodule import VectorK, HatVector, ZCElement, IntMatrix, pi_k, \
    p_matrices, kernel_and_coker, lift, glue, zc_canonicalize
from .rep import Tower, phi_matrix, m_k_of, distinguish, verify_identities
from .version import __version__  # noqa

__all__ = (
    "UWord", "CyclicWord", "Orientation", "canon_uword", "canon_cyclic",
    "enumerate_basis", "hom_count_cyclic", "hom_count_segment",
    "Automorphism", "NielsenMove", "MoveKind", "compose", "invert",
    "decompose", "inner_twist",
    "parse_word", "parse_moves", "format_word", "format_moves",
    "FullSet", "IdealPreimage", "full_set",
    "VectorK", "HatVector", "ZCElement", "IntMatrix", "pi_k", "p_matrices",
    "kernel_and_coker", "lift", "glue", "zc_canonicalize",
    "Tower", "phi_matrix", "m_k_of", "distinguish", "verify_identities",
)
