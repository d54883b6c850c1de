"""Logical negations of a density matrix.

Three unary maps, all acting through the spectral decomposition and hence
preserving eigenvectors: subtraction from the identity, the Moore-Penrose
support inverse, and the kernel projector, plus the convex mixture of the
latter two.  Outputs are deliberately left unnormalized; the conversational
pipeline normalizes once, after composition.
"""

from __future__ import annotations

import warnings

import numpy as np

from .errors import (
    EmptyKernelWarning,
    NotNormalizedError,
    WeightOutOfRangeError,
    ZeroMatrixError,
)
from .spectral import PSD_TOL, RANK_TOL, Dmat, spectral_decompose


def neg_sub(X: Dmat) -> Dmat:
    """Identity minus X.  Requires largest eigenvalue <= 1 so the result stays PSD."""
    top = X.max_eigenvalue()
    if top > 1.0 + PSD_TOL:
        raise NotNormalizedError(f"largest eigenvalue {top:.12g} exceeds 1")
    out = np.eye(X.dim) - X.matrix
    return Dmat((out + out.T) / 2.0)


def neg_supp(X: Dmat, rank_tol: float = RANK_TOL) -> Dmat:
    """Moore-Penrose inverse: invert eigenvalues on the support, zero the kernel."""
    decomp = spectral_decompose(X)
    cut = decomp.support_cut(rank_tol)
    if decomp.rank(rank_tol) == 0:
        raise ZeroMatrixError("support inverse of a rank-0 matrix")
    return Dmat(decomp.apply(lambda lam: 1.0 / lam if lam > cut else 0.0))


def neg_ker(X: Dmat, rank_tol: float = RANK_TOL) -> Dmat:
    """Projector onto the kernel.

    An invertible input has an empty kernel; the zero matrix is returned with
    an EmptyKernelWarning so that the convex mixture below stays total.
    """
    decomp = spectral_decompose(X)
    cut = decomp.support_cut(rank_tol)
    if decomp.rank(rank_tol) == X.dim:
        warnings.warn("input is invertible; kernel projector is zero", EmptyKernelWarning)
        return Dmat(np.zeros((X.dim, X.dim)))
    return Dmat(decomp.apply(lambda lam: 0.0 if lam > cut else 1.0))


def neg_inv(X: Dmat, support_weight: float = 0.5, rank_tol: float = RANK_TOL) -> Dmat:
    """Convex mixture of support inverse and kernel projector.

    Equal weighting is the default; `support_weight` in [0, 1] tilts toward
    the support inverse (1 recovers neg_supp, 0 recovers neg_ker).
    """
    if not 0.0 <= support_weight <= 1.0:
        raise WeightOutOfRangeError(f"support_weight {support_weight} not in [0, 1]")
    if support_weight == 0.0:
        return neg_ker(X, rank_tol)
    supp = neg_supp(X, rank_tol)
    if support_weight == 1.0:
        return supp
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", EmptyKernelWarning)
        ker = neg_ker(X, rank_tol)
    mixed = support_weight * supp.matrix + (1.0 - support_weight) * ker.matrix
    return Dmat(mixed)
