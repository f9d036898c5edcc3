"""Representation of a split extension N x| S on the truncated enveloping
algebra of N: vectors of N act by left multiplication, vectors of S by the
lift of their derivation on N.  The restriction to N is exactly the regular
truncated representation, so the whole thing is injective on N."""

from __future__ import annotations

from typing import Sequence

from .exact_linalg import ExactMatrix
from .lie_core import LieLattice, semidirect_assemble, unit
from .pbw import TruncatedUEA, build_weighted_basis
from .rep import LinearRep


def splittable_rep(
    N: LieLattice, S: LieLattice, action: Sequence[ExactMatrix]
) -> LinearRep:
    """Degree equals the monomial count of N at its nilpotency class.

    The action matrices must be derivations of N (checked); the assembled
    semidirect product is validated before any matrix is built.
    """
    ambient = semidirect_assemble(N, S, action)
    basis = build_weighted_basis(N)
    T = TruncatedUEA(basis, basis.nil_class)
    matrices = [T.left_mult_matrix(unit(N.rank, i)) for i in range(N.rank)]
    matrices += [T.derivation_star(D) for D in action]
    return LinearRep(lattice=ambient, matrices=tuple(matrices), provenance="zassenhaus")
