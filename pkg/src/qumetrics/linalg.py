"""Dense complex linear algebra for spectral calculus on Hermitian matrices."""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

#: Eigenvalues within ``PSD_RTOL * max(1, w_max)`` of zero are snapped to
#: exactly zero before fractional powers; anything below the negative of
#: that threshold is treated as genuinely indefinite.
PSD_RTOL = 1e-10

#: Imaginary parts below ``IMAG_DISCARD_RTOL * max(1, |z|)`` are dropped
#: from trace results (they are roundoff on Hermitian inputs).
IMAG_DISCARD_RTOL = 1e-10

#: Scale-aware tolerance for the Hermiticity residual ``max|A - A^dag|``.
HERMITICITY_RTOL = 1e-10


class EigensolverError(RuntimeError):
    """The underlying eigensolver failed to converge."""


class NotPositiveSemidefiniteError(ValueError):
    """A fractional power was requested of an indefinite matrix."""

    def __init__(self, eigenvalue: float, tolerance: float):
        self.eigenvalue = eigenvalue
        self.tolerance = tolerance
        super().__init__(
            f"matrix has eigenvalue {eigenvalue:.6e}, below the positivity "
            f"tolerance -{tolerance:.6e}"
        )


class EigenDecomposition(NamedTuple):
    """Spectral decomposition ``A = V diag(w) V^dag``.

    ``eigenvalues`` are real and sorted descending; ``eigenvectors`` holds
    the matching orthonormal eigenvectors as columns, each scaled so that
    its first nonzero component is real and positive.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def hermitize(a: np.ndarray) -> np.ndarray:
    """Return the Hermitian part ``(A + A^dag) / 2``."""
    a = np.asarray(a)
    return (a + a.conj().T) / 2


def _require_square(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return a


def _require_hermitian(a: np.ndarray) -> np.ndarray:
    a = _require_square(a)
    scale = max(1.0, float(np.abs(a).max()))
    residual = float(np.abs(a - a.conj().T).max())
    if residual > HERMITICITY_RTOL * scale:
        raise ValueError(
            f"matrix is not Hermitian: residual max|A - A^dag| = {residual:.3e}"
        )
    return a


def _fix_phases(vectors: np.ndarray, tol: float = 1e-12) -> None:
    """Rescale each column in place so its first nonzero entry is real > 0."""
    for j in range(vectors.shape[1]):
        column = vectors[:, j]
        significant = np.flatnonzero(np.abs(column) > tol)
        if significant.size:
            lead = column[significant[0]]
            column *= np.conj(lead) / np.abs(lead)


def eig_hermitian(a: np.ndarray) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix.

    Parameters
    ----------
    a : ndarray
        Hermitian matrix (checked against a scale-aware residual).

    Returns
    -------
    EigenDecomposition
        Real eigenvalues sorted descending with orthonormal, phase-fixed
        eigenvector columns. Deterministic for a fixed input.

    Raises
    ------
    EigensolverError
        If the iterative solver does not converge within its sweep cap.
    """
    a = _require_hermitian(a)
    try:
        w, v = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:
        raise EigensolverError(f"eigensolver did not converge: {exc}") from exc
    w = w[::-1].copy()
    v = np.ascontiguousarray(v[:, ::-1])
    _fix_phases(v)
    return EigenDecomposition(w, v)


def matrix_power(a: np.ndarray, alpha: float, rtol: float = PSD_RTOL) -> np.ndarray:
    """Fractional power ``A**alpha`` of a positive-semidefinite matrix.

    Computed as ``V diag(w**alpha) V^dag`` from the eigendecomposition,
    with eigenvalues within ``rtol * max(1, w_max)`` of zero snapped to
    exactly zero, and the convention ``0**alpha == 0`` for every alpha in
    [0, 1]. In particular ``alpha == 0`` yields the projector onto the
    support, never the identity.

    Raises
    ------
    NotPositiveSemidefiniteError
        If any eigenvalue lies below ``-rtol * max(1, w_max)``.
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    w, v = eig_hermitian(a)
    tol = rtol * max(1.0, float(w[0]))
    if float(w[-1]) < -tol:
        raise NotPositiveSemidefiniteError(float(w[-1]), tol)
    w = np.where(np.abs(w) <= tol, 0.0, w)
    powered = np.zeros_like(w)
    positive = w > 0.0
    powered[positive] = w[positive] ** alpha
    return hermitize((v * powered) @ v.conj().T)


def _real_if_negligible(value) -> float | complex:
    z = complex(value)
    if abs(z.imag) <= IMAG_DISCARD_RTOL * max(1.0, abs(z)):
        return z.real
    return z


def trace(a: np.ndarray) -> float | complex:
    """Tr(A), with numerically negligible imaginary parts discarded."""
    return _real_if_negligible(np.trace(_require_square(a)))


def trace_product(a: np.ndarray, b: np.ndarray) -> float | complex:
    """Tr(A B) without forming the product matrix."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.ndim != 2 or b.ndim != 2 or a.shape != b.T.shape:
        raise ValueError(f"shapes {a.shape} and {b.shape} do not trace to a scalar")
    return _real_if_negligible(np.sum(a * b.T))


def trace_quad(a: np.ndarray, x: np.ndarray, b: np.ndarray, y: np.ndarray) -> float | complex:
    """Tr(A X B Y) from the two half products A X and B Y.

    Hermitian A, X, B, Y with A, B >= 0 give a real result; the roundoff
    imaginary part is checked against ``IMAG_DISCARD_RTOL`` and dropped.
    """
    left = np.asarray(a) @ np.asarray(x)
    right = np.asarray(b) @ np.asarray(y)
    if left.shape != right.T.shape:
        raise ValueError(
            f"product of shapes {left.shape} and {right.shape} has no trace"
        )
    return _real_if_negligible(np.sum(left * right.T))


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with composite row index ``i1 * dim(B) + i2``."""
    return np.kron(np.asarray(a), np.asarray(b))


def partial_trace(mat: np.ndarray, subsystem: int, dims: tuple[int, int]) -> np.ndarray:
    """Trace out one tensor factor of a bipartite square matrix.

    Parameters
    ----------
    mat : ndarray
        Square matrix of dimension ``dims[0] * dims[1]`` using the
        :func:`tensor` index convention.
    subsystem : int
        1 traces out the first factor, 2 the second.
    dims : tuple of int
        Dimensions ``(m1, m2)`` of the two factors.
    """
    m1, m2 = dims
    mat = np.asarray(mat)
    if m1 < 1 or m2 < 1 or mat.shape != (m1 * m2, m1 * m2):
        raise ValueError(f"dims {dims} do not factor a matrix of shape {mat.shape}")
    blocks = mat.reshape(m1, m2, m1, m2)
    if subsystem == 1:
        return np.einsum("ijik->jk", blocks)
    if subsystem == 2:
        return np.einsum("ijkj->ik", blocks)
    raise ValueError(f"subsystem must be 1 or 2, got {subsystem}")


def _generator(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def _ginibre(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2)


def random_ginibre_density(n: int, seed, rank: int | None = None) -> np.ndarray:
    """Random density matrix ``G G^dag / Tr(G G^dag)`` from complex Gaussians.

    ``rank`` limits the number of Gaussian columns, yielding a rank-deficient
    state; by default the state is almost surely full rank. Deterministic for
    a fixed seed.
    """
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    cols = n if rank is None else rank
    if not 1 <= cols <= n:
        raise ValueError(f"rank must lie in [1, {n}], got {rank}")
    g = _ginibre(_generator(seed), n, cols)
    rho = hermitize(g @ g.conj().T)
    return rho / float(np.trace(rho).real)


def random_unitary(n: int, seed) -> np.ndarray:
    """Haar-distributed random unitary via QR of a Ginibre matrix.

    The R-diagonal phases are absorbed into Q so the distribution is
    genuinely uniform rather than QR-convention dependent.
    """
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    q, r = np.linalg.qr(_ginibre(_generator(seed), n, n))
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_orthogonal(n: int, seed) -> np.ndarray:
    """Haar-distributed random real orthogonal matrix via QR."""
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    q, r = np.linalg.qr(_generator(seed).standard_normal((n, n)))
    return q * np.sign(np.diagonal(r))


def random_observable(n: int, seed) -> np.ndarray:
    """Random Hermitian matrix ``(G + G^dag) / 2`` from a Ginibre draw."""
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    g = _ginibre(_generator(seed), n, n)
    return (g + g.conj().T) / 2
