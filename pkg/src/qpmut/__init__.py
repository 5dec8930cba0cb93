"""Exact-arithmetic engine for quivers with potentials.

Modules:
  core          paths, truncated series, potentials, cyclic calculus, substitutions
  jacobian      truncated Jacobian ideals, dimension reports, rigidity, restriction
  mutation      B-matrices, premutation, trivial/reduced splitting, QP mutation
  reps          decorated representations and isomorphism testing
  rep_mutation  representation mutation (triangle data, splittings, transport)
  catalog       worked examples: quivers, potentials, representation families
  cli           command line tool and local HTTP service

The names most programs need are re-exported here; everything else stays in
its module.
"""

from qpmut.core import (Arrow, ArrowSubstitution, Path, Quiver, Series,
                        apply_substitution, canonicalize_potential,
                        cyclic_derivative, parse_series)
from qpmut.fields import QQ, FieldSpec
from qpmut.jacobian import (QP, deformation_dim, is_rigid, jacobian_dim,
                            kk_dim)
from qpmut.mutation import b_matrix, matrix_mutate, mutate, mutate_sequence
from qpmut.rep_mutation import mutate_rep
from qpmut.reps import DecoratedRep, is_isomorphic, simple

__version__ = "0.1.0"

__all__ = [
    "Arrow", "ArrowSubstitution", "DecoratedRep", "FieldSpec", "Path", "QP",
    "QQ", "Quiver", "Series", "apply_substitution", "b_matrix",
    "canonicalize_potential", "cyclic_derivative", "deformation_dim",
    "is_isomorphic", "is_rigid", "jacobian_dim", "kk_dim", "matrix_mutate",
    "mutate", "mutate_rep", "mutate_sequence", "parse_series", "simple",
]
