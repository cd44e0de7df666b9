"""Density matrices: validation, named constructors, JSON state files."""

from __future__ import annotations

import json
from functools import cached_property
from pathlib import Path

import numpy as np

from .linalg import (
    PSD_RTOL,
    EigenDecomposition,
    eig_hermitian,
    hermitize,
    partial_trace,
    random_ginibre_density,
    tensor,
)

#: Accepted deviation of the trace from 1.
TRACE_TOL = 1e-10

#: Scale-aware bound on the Hermiticity residual of candidate states.
HERMITICITY_RTOL = 1e-10

#: How much zero-snapping the spectrum may shift the trace before the
#: state is rejected instead of renormalized.
CLAMP_TRACE_BUDGET = 1e-10


class ValidationError(ValueError):
    """A matrix failed one of the density-matrix invariants.

    ``invariant`` names the violated requirement (``"shape"``,
    ``"hermiticity"``, ``"trace"`` or ``"positivity"``) and ``residual``
    carries the measured violation.
    """

    def __init__(self, invariant: str, residual: float, message: str):
        self.invariant = invariant
        self.residual = residual
        super().__init__(message)


class StateFormatError(ValueError):
    """A state file could not be parsed into a matrix."""


class DensityMatrix:
    """A validated quantum state: Hermitian, positive semidefinite, unit trace.

    The spectral decomposition is computed once (validation is its first
    use) and cached; eigenvalues within the positivity tolerance of zero
    are snapped to exactly zero and the spectrum renormalized, so that
    downstream fractional powers never amplify eigensolver noise. Instances
    are immutable after construction and safe to share between workers.
    """

    def __init__(self, matrix, *, label: str | None = None):
        m = np.asarray(matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValidationError(
                "shape", 0.0, f"expected a square matrix, got shape {m.shape}"
            )
        scale = max(1.0, float(np.abs(m).max()))
        herm_residual = float(np.abs(m - m.conj().T).max())
        if herm_residual > HERMITICITY_RTOL * scale:
            raise ValidationError(
                "hermiticity",
                herm_residual,
                f"matrix is not Hermitian: residual max|A - A^dag| = {herm_residual:.3e}",
            )
        m = hermitize(m)
        tr = float(np.trace(m).real)
        trace_residual = abs(tr - 1.0)
        if trace_residual > TRACE_TOL:
            raise ValidationError(
                "trace", trace_residual, f"trace is {tr:.12g}, not 1"
            )
        m.flags.writeable = False
        self._matrix = m
        self.label = label
        self.spectrum  # noqa: B018 - warms the cache and enforces positivity

    @cached_property
    def spectrum(self) -> EigenDecomposition:
        decomp = eig_hermitian(self._matrix)
        w = decomp.eigenvalues
        tol = PSD_RTOL * max(1.0, float(w[0]))
        smallest = float(w[-1])
        if smallest < -tol:
            raise ValidationError(
                "positivity",
                smallest,
                f"matrix has negative eigenvalue {smallest:.6e} "
                f"(tolerance -{tol:.6e})",
            )
        clamped = np.where(np.abs(w) <= tol, 0.0, w)
        shift = abs(float(clamped.sum() - w.sum()))
        if shift > CLAMP_TRACE_BUDGET:
            raise ValidationError(
                "positivity",
                shift,
                f"snapping near-zero eigenvalues would move the trace by {shift:.3e}",
            )
        clamped = clamped / clamped.sum()
        clamped.flags.writeable = False
        decomp.eigenvectors.flags.writeable = False
        return EigenDecomposition(clamped, decomp.eigenvectors)

    @property
    def matrix(self) -> np.ndarray:
        """The state as a read-only complex array."""
        return self._matrix

    @property
    def dim(self) -> int:
        return self._matrix.shape[0]

    @property
    def eigenvalues(self) -> np.ndarray:
        """Clamped, renormalized eigenvalues, sorted descending."""
        return self.spectrum.eigenvalues

    @property
    def rank(self) -> int:
        """Number of nonzero eigenvalues after clamping."""
        return int(np.count_nonzero(self.eigenvalues))

    def tensor(self, other: "DensityMatrix") -> "DensityMatrix":
        """Product state of this state with ``other``."""
        return DensityMatrix(tensor(self._matrix, other.matrix))

    def partial_trace(self, subsystem: int, dims: tuple[int, int]) -> "DensityMatrix":
        """Reduced state after tracing out ``subsystem`` (1 or 2)."""
        return DensityMatrix(partial_trace(self._matrix, subsystem, dims))

    def __repr__(self) -> str:
        tag = f", label={self.label!r}" if self.label else ""
        return f"DensityMatrix(dim={self.dim}{tag})"


def validate(raw, *, label: str | None = None) -> DensityMatrix:
    """Validate a matrix as a density matrix or raise a ValidationError."""
    return DensityMatrix(raw, label=label)


def pure(psi, *, label: str | None = None) -> DensityMatrix:
    """Projector onto the (internally normalized) state vector ``psi``."""
    v = np.asarray(psi, dtype=complex).reshape(-1)
    norm = float(np.linalg.norm(v))
    if norm < 1e-12:
        raise ValueError("cannot build a state from the zero vector")
    v = v / norm
    return DensityMatrix(np.outer(v, v.conj()), label=label)


def maximally_mixed(n: int) -> DensityMatrix:
    """The state I/n with a flat spectrum."""
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    return DensityMatrix(np.eye(n) / n, label=f"maximally_mixed({n})")


_SINGLET = np.array([0.0, 1.0, -1.0, 0.0]) / np.sqrt(2)
_SINGLET_PROJECTOR = np.outer(_SINGLET, _SINGLET)


def werner(lam: float) -> DensityMatrix:
    """Two-qubit Werner state with singlet weight ``lam``.

    The family has spectrum ``(lam, (1 - lam)/3 x3)``: lam = 1/4 is the
    maximally mixed state and lam = 1 the singlet projector.
    """
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"state parameter must lie in [0, 1], got {lam}")
    m = ((4.0 * lam - 1.0) / 3.0) * _SINGLET_PROJECTOR + ((1.0 - lam) / 3.0) * np.eye(4)
    return DensityMatrix(m, label=f"werner({lam:g})")


def hansen_unnormalized() -> np.ndarray:
    """The integer 4x4 matrix whose normalization yields the Hansen state.

    Its trace is 26, so it is rejected by :func:`validate` as printed.
    """
    return np.array(
        [[7, 5, 5, 6], [5, 6, 2, 5], [5, 2, 6, 5], [6, 5, 5, 7]], dtype=float
    )


def hansen() -> DensityMatrix:
    """The Hansen two-qubit example state (the integer matrix over 26)."""
    return DensityMatrix(hansen_unnormalized() / 26.0, label="hansen")


def random_density(n: int, seed, rank: int | None = None) -> DensityMatrix:
    """Random state from the normalized Ginibre ensemble (seeded)."""
    return DensityMatrix(random_ginibre_density(n, seed, rank=rank))


def matrix_to_dict(matrix: np.ndarray, label: str | None = None) -> dict:
    """Serialize a complex matrix to the JSON state-file layout."""
    m = np.asarray(matrix, dtype=complex)
    entries = [[float(z.real), float(z.imag)] for z in m.ravel()]
    data: dict = {"dim": int(m.shape[0]), "entries": entries}
    if label is not None:
        data["label"] = label
    return data


def matrix_from_dict(data) -> tuple[np.ndarray, str | None]:
    """Parse the JSON state-file layout back into a complex matrix."""
    if not isinstance(data, dict):
        raise StateFormatError(f"expected a JSON object, got {type(data).__name__}")
    if "dim" not in data:
        raise StateFormatError("missing required field 'dim'")
    dim = data["dim"]
    if not isinstance(dim, int) or dim < 1:
        raise StateFormatError(f"field 'dim' must be a positive integer, got {dim!r}")
    if "entries" not in data:
        raise StateFormatError("missing required field 'entries'")
    entries = data["entries"]
    if not isinstance(entries, list) or len(entries) != dim * dim:
        count = len(entries) if isinstance(entries, list) else "non-list"
        raise StateFormatError(
            f"field 'entries' must hold {dim * dim} [re, im] pairs, got {count}"
        )
    flat = np.empty(dim * dim, dtype=complex)
    for idx, pair in enumerate(entries):
        if (
            not isinstance(pair, (list, tuple))
            or len(pair) != 2
            or not all(isinstance(p, (int, float)) for p in pair)
        ):
            raise StateFormatError(
                f"entry {idx} must be a [re, im] pair of numbers, got {pair!r}"
            )
        flat[idx] = complex(pair[0], pair[1])
    label = data.get("label")
    if label is not None and not isinstance(label, str):
        raise StateFormatError(f"field 'label' must be a string, got {label!r}")
    return flat.reshape(dim, dim), label


def state_to_dict(rho: DensityMatrix) -> dict:
    return matrix_to_dict(rho.matrix, rho.label)


def state_from_dict(data) -> DensityMatrix:
    matrix, label = matrix_from_dict(data)
    return DensityMatrix(matrix, label=label)


def save_state(rho: DensityMatrix, path) -> None:
    """Write a state to ``path`` as JSON (lossless at double precision)."""
    Path(path).write_text(json.dumps(state_to_dict(rho), indent=2) + "\n")


def load_state(path) -> DensityMatrix:
    """Read and validate a JSON state file."""
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise StateFormatError(f"{path}: invalid JSON: {exc}") from exc
    return state_from_dict(data)
