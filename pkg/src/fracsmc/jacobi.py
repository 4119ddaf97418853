"""Jacobi polynomials P_m^{α,β}, their norms, and Gauss–Jacobi rules."""
from dataclasses import dataclass, field
from functools import lru_cache
import math

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .specfun import log_gamma


@dataclass(frozen=True)
class JacobiIndex:
    alpha: float
    beta: float

    def __post_init__(self):
        if not (self.alpha > -1 and self.beta > -1):
            raise ValueError(f"Jacobi index needs alpha, beta > -1, got {self}")

    @classmethod
    def interval(cls, s):
        """(s/2, s/2): the 1-D basis on (-1, 1)."""
        return cls(s / 2.0, s / 2.0)

    @classmethod
    def radial(cls, n, s):
        """(s/2, n/2 - 1): the radial basis on the unit ball in R^n."""
        return cls(s / 2.0, n / 2.0 - 1.0)


def _recurrence(m, a, b):
    """Coefficients (A_m, B_m, C_m) of P_m = (A t + B) P_{m-1} - C P_{m-2}, m >= 2."""
    ab = a + b
    den = 2.0 * m * (m + ab)
    A = (2 * m + ab - 1) * (2 * m + ab) / den
    B = (a * a - b * b) * (2 * m + ab - 1) / (den * (2 * m + ab - 2))
    C = (m + a - 1) * (m + b - 1) * (2 * m + ab) / (m * (m + ab) * (2 * m + ab - 2))
    return A, B, C


def jacobi_all(degree, index, t):
    """Values P_0..P_degree at points t, shape (degree + 1,) + t.shape."""
    t = np.asarray(t, dtype=float)
    a, b = index.alpha, index.beta
    out = np.empty((degree + 1,) + t.shape)
    out[0] = 1.0
    if degree >= 1:
        out[1] = 0.5 * (a + b + 2) * t + 0.5 * (a - b)
    for m in range(2, degree + 1):
        A, B, C = _recurrence(m, a, b)
        out[m] = (A * t + B) * out[m - 1] - C * out[m - 2]
    return out


def jacobi_eval(m, index, t):
    """P_m^{α,β}(t) by the three-term recurrence."""
    if m < 0:
        raise ValueError("degree must be nonnegative")
    val = jacobi_all(m, index, t)[m]
    return float(val) if val.ndim == 0 else val


def jacobi_derivative(m, index, t):
    """d/dt P_m^{α,β}(t) = (m+α+β+1)/2 · P_{m-1}^{α+1,β+1}(t)."""
    if m == 0:
        return np.zeros_like(np.asarray(t, dtype=float))
    shifted = JacobiIndex(index.alpha + 1, index.beta + 1)
    return 0.5 * (m + index.alpha + index.beta + 1) * jacobi_eval(m - 1, shifted, t)


def log_gamma_norm(m, index):
    a, b = index.alpha, index.beta
    return ((a + b + 1) * math.log(2.0) + log_gamma(m + a + 1) + log_gamma(m + b + 1)
            - math.log(2 * m + a + b + 1) - log_gamma(m + a + b + 1) - log_gamma(m + 1))


def gamma_norm(m, index):
    """γ_m^{α,β} = ∫ ω^{α,β} (P_m^{α,β})² dt."""
    if m < 0:
        raise ValueError("degree must be nonnegative")
    if m == 0:
        # the general formula has a removable singularity at α+β+1 = 0
        return weight_mass(index)
    return math.exp(log_gamma_norm(m, index))


def weight_mass(index):
    """∫_{-1}^{1} (1-t)^α (1+t)^β dt."""
    a, b = index.alpha, index.beta
    return math.exp((a + b + 1) * math.log(2.0) + log_gamma(a + 1)
                    + log_gamma(b + 1) - log_gamma(a + b + 2))


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss–Jacobi rule with ``degree + 1`` nodes, exact on P_{2·degree+1}."""
    index: JacobiIndex
    degree: int
    nodes: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.nodes.setflags(write=False)
        self.weights.setflags(write=False)

    def integrate(self, values):
        return float(np.dot(self.weights, values))


def _golub_welsch_nodes(npts, a, b):
    k = np.arange(npts, dtype=float)
    ab = a + b
    diag = np.empty(npts)
    with np.errstate(divide="ignore", invalid="ignore"):
        diag[:] = (b * b - a * a) / ((2 * k + ab) * (2 * k + ab + 2))
    diag[0] = (b - a) / (ab + 2)
    if npts == 1:
        return diag
    k = np.arange(1, npts, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        off2 = (4 * k * (k + a) * (k + b) * (k + ab)
                / ((2 * k + ab) ** 2 * (2 * k + ab + 1) * (2 * k + ab - 1)))
    # k = 1 has a removable 0/0 when α + β = -1
    off2[0] = 4 * (1 + a) * (1 + b) / ((2 + ab) ** 2 * (3 + ab))
    return eigh_tridiagonal(diag, np.sqrt(off2), eigvals_only=True)


@lru_cache(maxsize=256)
def _gauss_rule_cached(degree, alpha, beta):
    index = JacobiIndex(alpha, beta)
    npts = degree + 1
    t = np.sort(_golub_welsch_nodes(npts, alpha, beta))
    for _ in range(50):
        p = jacobi_eval(npts, index, t)
        dp = jacobi_derivative(npts, index, t)
        step = p / dp
        t = t - step
        if np.max(np.abs(step)) < 1e-15:
            break
    else:
        if np.max(np.abs(step)) > 1e-12:
            raise RuntimeError(f"Gauss–Jacobi node solve failed for {index}, degree {degree}")
    if not (np.all(np.abs(t) < 1) and np.all(np.diff(t) > 0)):
        raise RuntimeError(f"Gauss–Jacobi nodes out of order for {index}, degree {degree}")
    dp = jacobi_derivative(npts, index, t)
    log_c = ((alpha + beta + 1) * math.log(2.0) + log_gamma(npts + alpha + 1)
             + log_gamma(npts + beta + 1) - log_gamma(npts + alpha + beta + 1)
             - log_gamma(npts + 1))
    w = np.exp(log_c - np.log1p(-t) - np.log1p(t) - 2.0 * np.log(np.abs(dp)))
    return t, w


def gauss_rule(degree, index):
    """(degree+1)-point Gauss–Jacobi rule for the weight (1-t)^α(1+t)^β.

    Nodes start from Golub–Welsch eigenvalues and are Newton-polished on
    P_{degree+1}; weights use the closed form with P' evaluated at the
    polished nodes.
    """
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    t, w = _gauss_rule_cached(int(degree), float(index.alpha), float(index.beta))
    return QuadratureRule(index, int(degree), t.copy(), w.copy())
