"""dglab: exact-arithmetic deformation theory toolkit.

Graded Lie algebras with differentials, their deformation rings via the
obstruction calculus, formality certificates, quiver moment maps, and
endomorphism complexes of projective replacements.  Everything runs over
exact rationals; no floats anywhere.
"""

from .linalg import DenseMatrix, Scalar, Subspace, complement, kernel_image, subspace_equal

__all__ = [
    "DenseMatrix",
    "Scalar",
    "Subspace",
    "complement",
    "kernel_image",
    "subspace_equal",
]

__version__ = "0.1.0"
