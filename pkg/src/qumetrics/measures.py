"""Scalar uncertainty measures of a state, with independent dual forms.

Every parameterized measure takes the exponent strictly inside (0, 1);
the endpoints degenerate and are rejected. Natural logarithms throughout,
so entropies are in nats.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .linalg import trace_product, trace_quad
from .observables import ObservableBasis, as_observable, commutator
from .states import DensityMatrix

#: Results this far below zero are treated as roundoff and clamped to 0.
NEGATIVE_CLAMP_TOL = 1e-10

#: Relative eigenvalue gap below which the log-mean is replaced by its
#: arithmetic limit (the exact formula loses digits to log cancellation).
LOG_MEAN_GUARD = 1e-8


class Degenerate:
    """Sentinel for states whose uncertainty does not depend on alpha."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "DEGENERATE"


DEGENERATE = Degenerate()


class BracketError(RuntimeError):
    """The critical-exponent bracket shows no sign change."""

    def __init__(self, g_low: float, g_high: float):
        self.g_low = g_low
        self.g_high = g_high
        super().__init__(
            "no sign change on the bracket: "
            f"g(1e-6) = {g_low:.6e}, g(0.5) = {g_high:.6e}"
        )


def _as_state(rho) -> DensityMatrix:
    if isinstance(rho, DensityMatrix):
        return rho
    return DensityMatrix(rho)


def _require_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie strictly inside (0, 1), got {alpha}")
    return alpha


def _check_dims(rho: DensityMatrix, x: np.ndarray) -> None:
    if x.shape != (rho.dim, rho.dim):
        raise ValueError(
            f"observable shape {x.shape} does not match state dimension {rho.dim}"
        )


def _clamped(value: float, tol: float = NEGATIVE_CLAMP_TOL) -> float:
    if -tol <= value < 0.0:
        return 0.0
    return value


def _eigenvalue_powers(eigenvalues: np.ndarray, alpha: float) -> np.ndarray:
    """Elementwise powers with the 0**alpha == 0 convention."""
    out = np.zeros_like(eigenvalues)
    positive = eigenvalues > 0.0
    out[positive] = eigenvalues[positive] ** alpha
    return out


def _state_power(rho: DensityMatrix, alpha: float) -> np.ndarray:
    """rho**alpha from the cached (clamped) spectrum."""
    w, v = rho.spectrum
    return (v * _eigenvalue_powers(w, alpha)) @ v.conj().T


def variance(rho, x) -> float:
    """Tr(rho X^2) - (Tr(rho X))^2, the total uncertainty of X in rho."""
    rho = _as_state(rho)
    x = as_observable(x)
    _check_dims(rho, x)
    second = float(np.real(trace_product(rho.matrix, x @ x)))
    first = float(np.real(trace_product(rho.matrix, x)))
    return _clamped(second - first * first, 1e-12)


def wyd_cross_term(rho, x, alpha: float) -> float:
    """Tr(rho^alpha X rho^(1-alpha) X), the concave part of the measure."""
    rho = _as_state(rho)
    x = as_observable(x)
    _check_dims(rho, x)
    alpha = _require_alpha(alpha)
    ra = _state_power(rho, alpha)
    rb = _state_power(rho, 1.0 - alpha)
    return float(np.real(trace_quad(ra, x, rb, x)))


def wyd_info(rho, x, alpha: float) -> float:
    """Quantum uncertainty of X in rho at exponent alpha (trace form).

    Tr(rho X^2) - Tr(rho^alpha X rho^(1-alpha) X); reduces to the skew
    information at alpha = 1/2, to the variance on pure states, and to 0
    when rho and X commute.
    """
    rho = _as_state(rho)
    x = as_observable(x)
    _check_dims(rho, x)
    alpha = _require_alpha(alpha)
    second = float(np.real(trace_product(rho.matrix, x @ x)))
    ra = _state_power(rho, alpha)
    rb = _state_power(rho, 1.0 - alpha)
    cross = float(np.real(trace_quad(ra, x, rb, x)))
    return _clamped(second - cross)


def wyd_info_commutator(rho, x, alpha: float) -> float:
    """Same measure through -1/2 Tr([rho^alpha, X][rho^(1-alpha), X]).

    An independent route used to cross-check :func:`wyd_info`.
    """
    rho = _as_state(rho)
    x = as_observable(x)
    _check_dims(rho, x)
    alpha = _require_alpha(alpha)
    ca = commutator(_state_power(rho, alpha), x)
    cb = commutator(_state_power(rho, 1.0 - alpha), x)
    return _clamped(-0.5 * float(np.real(trace_product(ca, cb))))


def wyd_info_spectral(eigenvalues, h_eigenbasis, alpha: float) -> float:
    """Pair-sum form over the spectrum, for H expressed in the eigenbasis.

    sum_{i<j} (w_i + w_j - w_i^a w_j^(1-a) - w_i^(1-a) w_j^a) |h_ij|^2,
    the fast path when the spectrum is already known.
    """
    alpha = _require_alpha(alpha)
    w = np.asarray(eigenvalues, dtype=float)
    h = np.asarray(h_eigenbasis, dtype=complex)
    if h.shape != (w.size, w.size):
        raise ValueError(
            f"matrix shape {h.shape} does not match {w.size} eigenvalues"
        )
    pa = _eigenvalue_powers(w, alpha)
    pb = _eigenvalue_powers(w, 1.0 - alpha)
    pair_terms = np.add.outer(w, w) - np.outer(pa, pb) - np.outer(pb, pa)
    weights = np.abs(h) ** 2
    return _clamped(float(np.sum(np.triu(pair_terms * weights, k=1))))


def luo_uncertainty(rho) -> float:
    """Observable-free uncertainty n - (Tr sqrt(rho))^2.

    Equals the pair sum of (sqrt(w_i) - sqrt(w_k))^2 over the spectrum:
    zero exactly on flat spectra, n - 1 on pure states.
    """
    rho = _as_state(rho)
    roots = np.sqrt(rho.eigenvalues)
    return _clamped(rho.dim - float(roots.sum()) ** 2)


def q_alpha(rho, alpha: float) -> float:
    """Observable-averaged uncertainty n - Tr(rho^alpha) Tr(rho^(1-alpha)).

    Symmetric under alpha <-> 1 - alpha, bounded by [0, n - 1], equal to
    :func:`luo_uncertainty` at alpha = 1/2 and dominated by it elsewhere.
    """
    rho = _as_state(rho)
    alpha = _require_alpha(alpha)
    w = rho.eigenvalues
    ta = float(_eigenvalue_powers(w, alpha).sum())
    tb = float(_eigenvalue_powers(w, 1.0 - alpha).sum())
    return _clamped(rho.dim - ta * tb)


def q_alpha_pair_sum(rho, alpha: float) -> float:
    """The same measure as n - 1 - sum_{i<k} of the cross-power pairs.

    A computationally independent rearrangement kept as a cross-check of
    :func:`q_alpha`.
    """
    rho = _as_state(rho)
    alpha = _require_alpha(alpha)
    w = rho.eigenvalues
    pa = _eigenvalue_powers(w, alpha)
    pb = _eigenvalue_powers(w, 1.0 - alpha)
    crossed = np.outer(pa, pb)
    pair_sum = float(np.sum(np.triu(crossed + crossed.T, k=1)))
    return _clamped(rho.dim - 1.0 - pair_sum)


def q_alpha_via_basis_sum(rho, basis: ObservableBasis, alpha: float) -> float:
    """Definitional sum of :func:`wyd_info` over an orthonormal basis.

    Exists to verify that the closed form is basis independent; the
    closed form :func:`q_alpha` is the production path.
    """
    rho = _as_state(rho)
    if basis.dim != rho.dim:
        raise ValueError(
            f"basis dimension {basis.dim} does not match state dimension {rho.dim}"
        )
    return _clamped(sum(wyd_info(rho, h, alpha) for h in basis))


def delta(l1: float, l2: float) -> float:
    """Twice the log-mean of two nonnegative spectrum entries.

    Piecewise: 0 when the product vanishes, 2*l1 at equality, otherwise
    2*(l2 - l1)/(ln l2 - ln l1). Near-equal arguments take the arithmetic
    limit l1 + l2 so the value stays continuous where the exact quotient
    would cancel catastrophically.
    """
    l1 = float(l1)
    l2 = float(l2)
    if l1 < 0.0 or l2 < 0.0:
        raise ValueError(f"arguments must be nonnegative, got ({l1}, {l2})")
    if l1 == 0.0 or l2 == 0.0:
        return 0.0
    if abs(l1 - l2) <= LOG_MEAN_GUARD * max(l1, l2):
        return l1 + l2
    return 2.0 * (l2 - l1) / (np.log(l2) - np.log(l1))


def q_star(rho) -> float:
    """Mean of the averaged uncertainty over the exponent: n - 1 - sum delta.

    Closed form of the integral of :func:`q_alpha` over (0, 1) via the
    log-mean; zero on flat spectra, n - 1 on pure states.
    """
    rho = _as_state(rho)
    w = rho.eigenvalues
    n = rho.dim
    pair_total = 0.0
    for i in range(n):
        for k in range(i + 1, n):
            pair_total += delta(float(w[i]), float(w[k]))
    return _clamped(n - 1.0 - pair_total)


def q_star_quadrature(rho, order: int = 64) -> float:
    """Gauss-Legendre integral of :func:`q_alpha` over (0, 1).

    The integrand is analytic in the exponent for any fixed spectrum, so
    the default 64 nodes reach spectral accuracy; this is the independent
    check of the closed form.
    """
    rho = _as_state(rho)
    nodes, weights = np.polynomial.legendre.leggauss(order)
    alphas = 0.5 * (nodes + 1.0)
    return 0.5 * float(sum(w * q_alpha(rho, a) for w, a in zip(weights, alphas)))


def critical_alpha(rho, tol: float = 1e-10):
    """Exponent in (0, 1/2] where the averaged uncertainty meets its mean.

    Bisects g(alpha) = q_alpha - q_star on [1e-6, 1/2]: g(1/2) >= 0 always
    and g -> -q_star at the left end for full-rank states. Returns the
    :data:`DEGENERATE` sentinel when g vanishes at both ends (the measure
    is constant in alpha: flat-on-support spectra such as pure or
    maximally mixed states).

    Raises
    ------
    BracketError
        If the bracket shows no sign change for a non-degenerate state.
    """
    rho = _as_state(rho)
    if tol <= 0.0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    target = q_star(rho)
    low, high = 1e-6, 0.5

    def g(a: float) -> float:
        return q_alpha(rho, a) - target

    g_low = g(low)
    g_high = g(high)
    if abs(g_low) <= tol and abs(g_high) <= tol:
        return DEGENERATE
    if g_low > 0.0 or g_high < 0.0:
        raise BracketError(g_low, g_high)
    mid = 0.5 * (low + high)
    for _ in range(200):
        mid = 0.5 * (low + high)
        g_mid = g(mid)
        if abs(g_mid) <= tol:
            return mid
        if g_mid < 0.0:
            low = mid
        else:
            high = mid
    raise RuntimeError(
        f"bisection did not reach |g| <= {tol} in 200 iterations; "
        f"last g({mid}) = {g(mid):.3e}"
    )


def purity(rho) -> float:
    """Tr(rho^2), from the cached spectrum."""
    rho = _as_state(rho)
    return float(np.sum(rho.eigenvalues**2))


def von_neumann_entropy(rho) -> float:
    """-sum w ln w over the spectrum, with 0 ln 0 = 0 (nats)."""
    rho = _as_state(rho)
    w = rho.eigenvalues
    positive = w[w > 0.0]
    return _clamped(-float(np.sum(positive * np.log(positive))))


def _require_order(q: float) -> float:
    q = float(q)
    if q <= 0.0 or q == 1.0:
        raise ValueError(f"entropy order must be positive and != 1, got {q}")
    return q


def renyi_entropy(rho, q: float) -> float:
    """ln(Tr rho^q) / (1 - q); the q -> 1 limit recovers the von Neumann
    entropy (which fixes the sign of the denominator)."""
    rho = _as_state(rho)
    q = _require_order(q)
    total = float(np.sum(rho.eigenvalues[rho.eigenvalues > 0.0] ** q))
    return np.log(total) / (1.0 - q)


def tsallis_entropy(rho, q: float) -> float:
    """(1 - Tr rho^q) / (q - 1)."""
    rho = _as_state(rho)
    q = _require_order(q)
    total = float(np.sum(rho.eigenvalues[rho.eigenvalues > 0.0] ** q))
    return (1.0 - total) / (q - 1.0)


def bz_information(rho) -> float:
    """Purity-based information (n Tr(rho^2) - 1)/(n - 1), normalized to [0, 1].

    Zero for the maximally mixed state, one for pure states. Defined as 0
    for the trivial one-dimensional system.
    """
    rho = _as_state(rho)
    if rho.dim == 1:
        return 0.0
    return _clamped((rho.dim * purity(rho) - 1.0) / (rho.dim - 1.0))


class EntropySummary(NamedTuple):
    """Entropy-style comparison measures of a single state."""

    von_neumann: float
    renyi: float
    tsallis: float
    bz: float
    purity: float


def entropies(rho, q: float = 2.0) -> EntropySummary:
    """All comparison entropies of a state at order ``q`` (natural log)."""
    rho = _as_state(rho)
    return EntropySummary(
        von_neumann=von_neumann_entropy(rho),
        renyi=renyi_entropy(rho, q),
        tsallis=tsallis_entropy(rho, q),
        bz=bz_information(rho),
        purity=purity(rho),
    )


@dataclass
class MeasureReport:
    """Named bundle of every scalar measure for one state.

    ``q_by_alpha`` maps each requested exponent to the averaged
    uncertainty; the observable block (``variance``/``wyd_by_alpha``) is
    present only when an observable was supplied.
    """

    dim: int
    label: str | None
    purity: float
    von_neumann: float
    entropy_order: float
    renyi: float
    tsallis: float
    bz: float
    luo: float
    q_by_alpha: dict = field(default_factory=dict)
    q_star: float = 0.0
    variance: float | None = None
    wyd_by_alpha: dict | None = None

    def to_dict(self) -> dict:
        data = {
            "dim": self.dim,
            "label": self.label,
            "purity": self.purity,
            "von_neumann": self.von_neumann,
            "entropy_order": self.entropy_order,
            "renyi": self.renyi,
            "tsallis": self.tsallis,
            "bz": self.bz,
            "luo": self.luo,
            "q_alpha": {repr(a): v for a, v in self.q_by_alpha.items()},
            "q_star": self.q_star,
        }
        if self.variance is not None:
            data["variance"] = self.variance
        if self.wyd_by_alpha is not None:
            data["wyd_alpha"] = {repr(a): v for a, v in self.wyd_by_alpha.items()}
        return data


DEFAULT_ALPHAS = (0.25, 1.0 / 3.0, 0.5)


def measure_report(rho, observable=None, alphas=DEFAULT_ALPHAS, q: float = 2.0) -> MeasureReport:
    """Evaluate every measure of ``rho`` (and of an optional observable)."""
    rho = _as_state(rho)
    summary = entropies(rho, q)
    report = MeasureReport(
        dim=rho.dim,
        label=rho.label,
        purity=summary.purity,
        von_neumann=summary.von_neumann,
        entropy_order=float(q),
        renyi=summary.renyi,
        tsallis=summary.tsallis,
        bz=summary.bz,
        luo=luo_uncertainty(rho),
        q_by_alpha={float(a): q_alpha(rho, a) for a in alphas},
        q_star=q_star(rho),
    )
    if observable is not None:
        x = as_observable(observable)
        report.variance = variance(rho, x)
        report.wyd_by_alpha = {float(a): wyd_info(rho, x, a) for a in alphas}
    return report
