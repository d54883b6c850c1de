"""Numerical foundation: symmetric PSD matrices, eigendecomposition, Loewner order.

Matrices are real symmetric positive semidefinite throughout.  The top-level
normalization convention divides by the largest eigenvalue so that it never
exceeds 1; `rescale_max_eig` additionally scales upward so the largest
eigenvalue is exactly 1 (used for worldly contexts and pipeline outputs).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    NonSymmetricError,
    NotNormalizedError,
    NotPSDError,
    ZeroMatrixError,
)

SYMMETRY_TOL = 1e-10
PSD_TOL = 1e-9
RANK_TOL = 1e-8
ZERO_NORM_TOL = 1e-12

# Eigenvalues closer than this (relative to the largest) are treated as one
# eigenspace when grouping projectors.
EIGENVALUE_GROUP_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class Dmat:
    """Real symmetric PSD matrix representing a word or context meaning.

    Construction validates symmetry (within SYMMETRY_TOL) and positive
    semidefiniteness (eigenvalues >= -PSD_TOL).  A matrix flagged
    `normalized` must additionally have largest eigenvalue <= 1 + PSD_TOL.
    Instances are immutable; the wrapped array is read-only.
    """

    matrix: np.ndarray
    normalized: bool = False

    def __post_init__(self):
        m = np.array(self.matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
            raise DimensionMismatchError(f"expected a square matrix, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise NotPSDError("matrix has non-finite entries")
        asym = float(np.max(np.abs(m - m.T)))
        if asym > SYMMETRY_TOL:
            raise NonSymmetricError(f"asymmetry {asym:.3e} exceeds {SYMMETRY_TOL:.0e}")
        eigenvalues = np.linalg.eigvalsh(m)
        if eigenvalues[0] < -PSD_TOL:
            raise NotPSDError(f"eigenvalue {eigenvalues[0]:.3e} below -{PSD_TOL:.0e}")
        if self.normalized and eigenvalues[-1] > 1.0 + PSD_TOL:
            raise NotNormalizedError(
                f"flagged normalized but largest eigenvalue is {eigenvalues[-1]:.12g}"
            )
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def identity(cls, dim: int) -> "Dmat":
        return cls(np.eye(dim), normalized=True)

    @classmethod
    def from_diagonal(cls, values, normalized: bool = False) -> "Dmat":
        return cls(np.diag(np.asarray(values, dtype=float)), normalized=normalized)

    def max_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.matrix)[-1])

    def frobenius_norm(self) -> float:
        return float(np.linalg.norm(self.matrix))

    def is_zero(self, tol: float = ZERO_NORM_TOL) -> bool:
        return self.frobenius_norm() < tol

    def __repr__(self) -> str:
        return f"Dmat(dim={self.dim}, normalized={self.normalized})"


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """Eigenvalues (descending, kernel clamped to 0) with orthonormal eigenvectors.

    The eigenvector convention is deterministic: each column has its first
    component of magnitude > 1e-12 made positive, and columns with equal
    eigenvalues are ordered lexicographically.  Individual eigenvectors of a
    degenerate eigenvalue are not unique; compare eigenspace projectors, not
    columns, when spectra repeat.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return self.eigenvectors.shape[0]

    def projector(self, i: int) -> np.ndarray:
        v = self.eigenvectors[:, i]
        return np.outer(v, v)

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.T

    def apply(self, fn) -> np.ndarray:
        """Spectral function: sum of fn(eigenvalue) times each projector."""
        v = self.eigenvectors
        mapped = np.array([fn(lam) for lam in self.eigenvalues], dtype=float)
        out = (v * mapped) @ v.T
        return (out + out.T) / 2.0

    def support_cut(self, rank_tol: float = RANK_TOL) -> float:
        """Threshold separating support from kernel, relative to the top eigenvalue."""
        top = self.eigenvalues[0] if self.eigenvalues.size else 0.0
        return rank_tol * max(top, 0.0)

    def rank(self, rank_tol: float = RANK_TOL) -> int:
        return int(np.sum(self.eigenvalues > self.support_cut(rank_tol)))

    def eigenspaces(self, group_tol: float = EIGENVALUE_GROUP_TOL):
        """Group eigenvalues within group_tol (relative) into (value, projector) pairs.

        Returned in descending eigenvalue order; projectors sum to the identity.
        """
        scale = max(abs(self.eigenvalues[0]), 1.0) if self.eigenvalues.size else 1.0
        tol = group_tol * scale
        groups: list[tuple[float, np.ndarray]] = []
        start = 0
        n = self.eigenvalues.size
        for i in range(1, n + 1):
            if i == n or self.eigenvalues[start] - self.eigenvalues[i] > tol:
                block = self.eigenvectors[:, start:i]
                proj = block @ block.T
                value = float(np.mean(self.eigenvalues[start:i]))
                groups.append((value, (proj + proj.T) / 2.0))
                start = i
        return groups


def _fix_signs(vectors: np.ndarray) -> np.ndarray:
    out = vectors.copy()
    for j in range(out.shape[1]):
        col = out[:, j]
        nonzero = np.nonzero(np.abs(col) > 1e-12)[0]
        if nonzero.size and col[nonzero[0]] < 0:
            out[:, j] = -col
    return out


def _deterministic_order(eigenvalues: np.ndarray, vectors: np.ndarray):
    """Descending eigenvalues; ties broken by lexicographic eigenvector order."""
    keys = []
    for j in range(len(eigenvalues)):
        keys.append((-round(float(eigenvalues[j]), 12), tuple(np.round(vectors[:, j], 12))))
    order = sorted(range(len(eigenvalues)), key=lambda j: keys[j])
    return eigenvalues[order], vectors[:, order]


def spectral_decompose(M: Dmat, psd_tol: float = PSD_TOL) -> SpectralDecomposition:
    """Eigendecompose a Dmat, clamping roundoff-negative eigenvalues to zero.

    Exactly diagonal matrices take a fast path that keeps the standard basis,
    so diagonal fixtures decompose without floating-point surprises.
    """
    m = M.matrix
    if np.count_nonzero(m - np.diag(np.diagonal(m))) == 0:
        eigenvalues = np.diagonal(m).astype(float).copy()
        vectors = np.eye(M.dim)
    else:
        eigenvalues, vectors = np.linalg.eigh(m)
    if eigenvalues.min() < -psd_tol:
        raise NotPSDError(f"eigenvalue {eigenvalues.min():.3e} below -{psd_tol:.0e}")
    eigenvalues = np.where(eigenvalues < 0.0, 0.0, eigenvalues)
    vectors = _fix_signs(vectors)
    eigenvalues, vectors = _deterministic_order(eigenvalues, vectors)
    return SpectralDecomposition(eigenvalues=eigenvalues, eigenvectors=vectors)


def normalize_max_eig(M: Dmat) -> Dmat:
    """Divide by the largest eigenvalue when it exceeds 1; never scale upward."""
    if M.is_zero():
        raise ZeroMatrixError("cannot normalize the zero matrix")
    top = M.max_eigenvalue()
    scaled = M.matrix / max(1.0, top)
    return Dmat(scaled, normalized=True)


def rescale_max_eig(M: Dmat) -> Dmat:
    """Scale so the largest eigenvalue is exactly 1 (up or down).

    Worldly contexts and conversational-negation outputs use this stronger
    convention so that results of different words live on a common scale.
    """
    if M.is_zero():
        raise ZeroMatrixError("cannot rescale the zero matrix")
    top = M.max_eigenvalue()
    if top < ZERO_NORM_TOL:
        raise ZeroMatrixError("largest eigenvalue is numerically zero")
    return Dmat(M.matrix / top, normalized=True)


def loewner_leq(A: Dmat, B: Dmat, tol: float = PSD_TOL) -> bool:
    """True iff B - A is PSD within tol (crisp Loewner order A below B)."""
    if A.dim != B.dim:
        raise DimensionMismatchError(f"dims {A.dim} and {B.dim} differ")
    smallest = float(np.linalg.eigvalsh(B.matrix - A.matrix)[0])
    return smallest >= -tol


def support_projector(M: Dmat, rank_tol: float = RANK_TOL) -> Dmat:
    """Orthogonal projector onto the span of eigenvectors above the rank cut."""
    decomp = spectral_decompose(M)
    cut = decomp.support_cut(rank_tol)
    proj = decomp.apply(lambda lam: 1.0 if lam > cut else 0.0)
    return Dmat(proj, normalized=True)
