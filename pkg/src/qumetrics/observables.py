"""Observables, the orthonormal Hermitian basis, and commutator helpers."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .linalg import hermitize
from .states import HERMITICITY_RTOL, StateFormatError, matrix_from_dict

#: Allowed deviation of the basis Gram matrix from the identity. The
#: standard basis is orthonormal to machine precision; rotated bases
#: inherit the orthogonality residual of the rotation, bounded by this.
ORTHONORMALITY_TOL = 1e-10


def as_observable(matrix) -> np.ndarray:
    """Check Hermiticity (scale-aware) and return the Hermitian part."""
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    scale = max(1.0, float(np.abs(m).max()))
    residual = float(np.abs(m - m.conj().T).max())
    if residual > HERMITICITY_RTOL * scale:
        raise ValueError(
            f"observable is not Hermitian: residual max|A - A^dag| = {residual:.3e}"
        )
    return hermitize(m)


@dataclass(frozen=True)
class ObservableBasis:
    """Ordered orthonormal basis of the real space of n x n Hermitian
    matrices under the inner product <X, Y> = Tr(X Y).

    Orthonormality is enforced at construction, so consumers may sum over
    the elements without re-checking.
    """

    dim: int
    elements: tuple

    def __post_init__(self):
        n = self.dim
        if len(self.elements) != n * n:
            raise ValueError(
                f"a dim-{n} basis needs {n * n} elements, got {len(self.elements)}"
            )
        for idx, element in enumerate(self.elements):
            if element.shape != (n, n):
                raise ValueError(
                    f"element {idx} has shape {element.shape}, expected {(n, n)}"
                )
        gram = self.gram()
        residual = float(np.abs(gram - np.eye(n * n)).max())
        if residual > ORTHONORMALITY_TOL:
            raise ValueError(f"basis is not orthonormal: Gram residual {residual:.3e}")

    def gram(self) -> np.ndarray:
        """Matrix of pairwise inner products Tr(H_j H_k)."""
        flat = np.stack([element.ravel() for element in self.elements])
        return np.real(flat @ flat.conj().T)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, idx):
        return self.elements[idx]


def standard_basis(n: int) -> ObservableBasis:
    """The canonical orthonormal Hermitian basis in deterministic order.

    Diagonal projectors |i><i| first, then the symmetric combinations
    (|i><k| + |k><i|)/sqrt(2) for i < k in lexicographic order, then the
    antisymmetric ones (-i|i><k| + i|k><i|)/sqrt(2) in the same order.
    """
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    inv_sqrt2 = 1.0 / np.sqrt(2.0)
    elements = []
    for i in range(n):
        e = np.zeros((n, n), dtype=complex)
        e[i, i] = 1.0
        elements.append(e)
    for i in range(n):
        for k in range(i + 1, n):
            e = np.zeros((n, n), dtype=complex)
            e[i, k] = inv_sqrt2
            e[k, i] = inv_sqrt2
            elements.append(e)
    for i in range(n):
        for k in range(i + 1, n):
            e = np.zeros((n, n), dtype=complex)
            e[i, k] = -1j * inv_sqrt2
            e[k, i] = 1j * inv_sqrt2
            elements.append(e)
    return ObservableBasis(n, tuple(elements))


def rotate_basis(basis: ObservableBasis, o) -> ObservableBasis:
    """New basis H'_j = sum_k O_jk H_k for a real orthogonal O.

    Real combinations of Hermitian matrices stay Hermitian, and an
    orthogonal O preserves orthonormality.
    """
    o = np.asarray(o)
    if np.iscomplexobj(o):
        if np.abs(o.imag).max() > 0.0:
            raise ValueError("rotation matrix must be real")
        o = o.real
    d = len(basis)
    if o.shape != (d, d):
        raise ValueError(f"rotation must be {d}x{d}, got {o.shape}")
    residual = float(np.abs(o.T @ o - np.eye(d)).max())
    if residual > ORTHONORMALITY_TOL:
        raise ValueError(f"rotation is not orthogonal: residual {residual:.3e}")
    stacked = np.stack(basis.elements)
    rotated = np.tensordot(o, stacked, axes=(1, 0))
    return ObservableBasis(basis.dim, tuple(rotated))


def commutator(a, b) -> np.ndarray:
    """[A, B] = A B - B A."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape or a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"commutator needs equal square shapes, got {a.shape}, {b.shape}")
    return a @ b - b @ a


def commutes(a, b, tol: float | None = None) -> bool:
    """Whether max|[A, B]| is below a scale-aware tolerance."""
    a = np.asarray(a)
    b = np.asarray(b)
    if tol is None:
        tol = 1e-10 * max(1.0, float(np.abs(a).max()) * float(np.abs(b).max()))
    return float(np.abs(commutator(a, b)).max()) <= tol


def load_observable(path) -> np.ndarray:
    """Read an observable from the JSON matrix format (Hermiticity only)."""
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise StateFormatError(f"{path}: invalid JSON: {exc}") from exc
    matrix, _ = matrix_from_dict(data)
    return as_observable(matrix)
