"""Meaning-update compositions of two density matrices.

spider, fuzz, and phaser read their spectral structure off the second
operand B: spider pinches A in B's eigenbasis and multiplies by B's
eigenvalues, fuzz conjugates A by B's eigenspace projectors weighted by the
eigenvalues, phaser conjugates by B's square root.  mult and diag work in
the computational basis and ignore any basis choice.  `compose` dispatches
and lets callers pick which argument occupies the structural slot.
"""

from __future__ import annotations

from enum import Enum

import numpy as np

from .errors import DimensionMismatchError
from .spectral import EIGENVALUE_GROUP_TOL, Dmat, spectral_decompose


class CompositionKind(str, Enum):
    SPIDER = "spider"
    FUZZ = "fuzz"
    PHASER = "phaser"
    MULT = "mult"
    DIAG = "diag"


class BasisSlot(str, Enum):
    """Which compose() argument supplies the spectral structure (the B slot)."""

    FIRST_OPERAND = "first_operand"
    SECOND_OPERAND = "second_operand"


def _check_dims(A: Dmat, B: Dmat) -> None:
    if A.dim != B.dim:
        raise DimensionMismatchError(f"dims {A.dim} and {B.dim} differ")


def _wrap(matrix: np.ndarray) -> Dmat:
    return Dmat((matrix + matrix.T) / 2.0)


def spider(A: Dmat, B: Dmat) -> Dmat:
    """Entrywise product in B's eigenbasis.

    Equivalent to conjugating the tensor product of A and B by the copy
    isometry built from B's eigenvectors, without materializing the
    dim^2 x dim^2 tensor: in B's eigenbasis B is diagonal, so the entrywise
    product keeps only A's diagonal there, scaled by B's eigenvalues.
    """
    _check_dims(A, B)
    decomp = spectral_decompose(B)
    v = decomp.eigenvectors
    a_diag = np.einsum("ij,jk,ki->i", v.T, A.matrix, v)
    return _wrap((v * (decomp.eigenvalues * a_diag)) @ v.T)


def fuzz(A: Dmat, B: Dmat) -> Dmat:
    """Sum of B's eigenspace projectors applied around A, weighted by eigenvalue.

    Projectors are grouped per distinct eigenvalue of B so degenerate spectra
    do not depend on the eigenvector choice inside an eigenspace.
    """
    _check_dims(A, B)
    decomp = spectral_decompose(B)
    out = np.zeros((A.dim, A.dim))
    for value, proj in decomp.eigenspaces(EIGENVALUE_GROUP_TOL):
        if value != 0.0:
            out += value * (proj @ A.matrix @ proj)
    return _wrap(out)


def phaser(A: Dmat, B: Dmat) -> Dmat:
    """Conjugation by the spectral square root of B (Bayesian-style update)."""
    _check_dims(A, B)
    root = spectral_decompose(B).apply(np.sqrt)
    return _wrap(root @ A.matrix @ root)


def mult(A: Dmat, B: Dmat) -> Dmat:
    """Entrywise product in the computational basis (Schur product)."""
    _check_dims(A, B)
    return _wrap(A.matrix * B.matrix)


def diag_comp(A: Dmat, B: Dmat) -> Dmat:
    """Product of the diagonal parts; off-diagonal entries are discarded."""
    _check_dims(A, B)
    return Dmat(np.diag(np.diagonal(A.matrix) * np.diagonal(B.matrix)))


_SYMMETRIC_KINDS = {CompositionKind.MULT, CompositionKind.DIAG}

_STRUCTURAL = {
    CompositionKind.SPIDER: spider,
    CompositionKind.FUZZ: fuzz,
    CompositionKind.PHASER: phaser,
}


def compose(
    A: Dmat,
    B: Dmat,
    kind: CompositionKind,
    slot: BasisSlot = BasisSlot.SECOND_OPERAND,
) -> Dmat:
    """Apply a composition, honoring which operand holds the spectral structure.

    For spider/fuzz/phaser the operand named by `slot` is placed in the
    structural position; mult and diag are symmetric and ignore it.  Output
    is not normalized; the pipeline normalizes once after composition.
    """
    kind = CompositionKind(kind)
    if kind in _SYMMETRIC_KINDS:
        _check_dims(A, B)
        return mult(A, B) if kind is CompositionKind.MULT else diag_comp(A, B)
    fn = _STRUCTURAL[kind]
    if BasisSlot(slot) is BasisSlot.FIRST_OPERAND:
        return fn(B, A)
    return fn(A, B)
