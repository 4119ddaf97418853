"""Eigenrelations of the fractional Laplacian and a radial reference solver.

On the interval, (-Δ)^{s/2}[(1-t²)^{s/2} P_m^{s/2,s/2}(t)] = λ_m P_m^{s/2,s/2}(t).
On the unit ball of R^n, with ρ(x) = (1-|x|²)^{s/2} and t = 2|x|²-1,
(-Δ)^{s/2}[ρ P_m^{s/2,n/2-1}(t)] = μ_m P_m^{s/2,n/2-1}(t).
"""
from dataclasses import dataclass, field
import math
from typing import Callable, Optional

import numpy as np

from .jacobi import JacobiIndex, gamma_norm, gauss_rule, jacobi_all
from .specfun import log_gamma


@dataclass(frozen=True)
class SpectralCoeffs:
    """Coefficients of Σ c_m P_m^{α,β}; ``weighted`` adds the ρ prefactor."""
    index: JacobiIndex
    coeffs: np.ndarray = field(repr=False)
    weighted: bool = False

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=float)
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self):
        return len(self.coeffs) - 1


@dataclass(frozen=True)
class ProblemSpec:
    """Radial fractional Poisson problem on the ball of radius ``radius``.

    ``f`` maps radii in [0, radius] to source values and ``g`` maps radii
    > radius to exterior data; ``g=None`` means homogeneous data.  Both
    must accept numpy arrays.
    """
    n: int
    s: float
    f: Callable[[np.ndarray], np.ndarray]
    g: Optional[Callable[[np.ndarray], np.ndarray]] = None
    radius: float = 1.0
    name: str = "custom"

    def __post_init__(self):
        if self.n < 1 or int(self.n) != self.n:
            raise ValueError("n must be a positive integer")
        if not 0 < self.s < 2:
            raise ValueError("s must lie in (0, 2)")
        if not self.radius > 0:
            raise ValueError("radius must be positive")

    @property
    def index(self):
        return JacobiIndex.radial(self.n, self.s)

    def to_unit_ball(self):
        """Equivalent problem on B_1 for v(y) = u(R y): source R^s f(R·), data g(R·)."""
        R = self.radius
        if R == 1.0:
            return self
        f, g = self.f, self.g
        scale = R ** self.s
        return ProblemSpec(self.n, self.s, lambda r: scale * np.asarray(f(R * np.asarray(r))),
                           None if g is None else (lambda r: g(R * np.asarray(r))),
                           1.0, self.name)


def _check_order(s):
    if not 0 < s < 2:
        raise ValueError("s must lie in (0, 2)")


def lambda_1d(m, s):
    """Eigenvalue λ_m = Γ(m+s+1)/m! of the interval eigenrelation."""
    _check_order(s)
    return math.exp(log_gamma(m + s + 1) - log_gamma(m + 1))


def log_mu(m, n, s):
    return (s * math.log(2.0) + log_gamma(s / 2 + m + 1) + log_gamma((s + n) / 2 + m)
            - log_gamma(m + 1) - log_gamma(n / 2 + m))


def mu(m, n, s):
    """Eigenvalue μ_m = 2^s Γ(s/2+m+1) Γ((s+n)/2+m) / (m! Γ(n/2+m)) of the ball relation."""
    _check_order(s)
    return math.exp(log_mu(m, n, s))


def mu_vector(degree, n, s):
    return np.array([mu(m, n, s) for m in range(degree + 1)])


def lambda_vector(degree, s):
    return np.array([lambda_1d(m, s) for m in range(degree + 1)])


def boundary_weight(x_norm, s):
    """(1 - r²)^{s/2}, exactly 0 at r = 1."""
    r = np.asarray(x_norm, dtype=float)
    base = np.clip((1.0 - r) * (1.0 + r), 0.0, None)
    return base ** (s / 2.0)


def _check_radius(x_norm):
    r = np.asarray(x_norm, dtype=float)
    if np.any(~((r >= 0) & (r <= 1))):
        raise ValueError("radius must lie in [0, 1]")
    return r


def eigenfunction_radial(m, n, s, x_norm):
    """ρ(x) P_m^{s/2,n/2-1}(2|x|²-1) at |x| = x_norm."""
    r = _check_radius(x_norm)
    p = jacobi_all(m, JacobiIndex.radial(n, s), 2.0 * r * r - 1.0)[m]
    out = boundary_weight(r, s) * p
    return float(out) if out.ndim == 0 else out


def weighted_orthogonality_constant(m, n, s):
    """∫_{B_1} ρ (P_m^{s/2,n/2-1}(2|x|²-1))² dx."""
    index = JacobiIndex.radial(n, s)
    return (math.pi ** (n / 2) * gamma_norm(m, index)
            / (2.0 ** ((n + s) / 2) * math.exp(log_gamma(n / 2))))


def eval_expansion(coeffs, t):
    """Σ c_m P_m(t) without any weight prefactor."""
    vals = jacobi_all(coeffs.degree, coeffs.index, t)
    out = np.tensordot(coeffs.coeffs, vals, axes=1)
    return float(out) if np.ndim(out) == 0 else out


def eval_weighted_expansion(coeffs, n, s, x_norm):
    """ρ(x) Σ ĉ_m P_m(2|x|²-1) at |x| = x_norm."""
    if not coeffs.weighted:
        raise ValueError("expected a weighted expansion")
    r = _check_radius(x_norm)
    out = boundary_weight(r, s) * eval_expansion(coeffs, 2.0 * r * r - 1.0)
    return float(out) if np.ndim(out) == 0 else out


def project_radial(func, n, s, degree, quad_degree=None):
    """Jacobi coefficients of r ↦ func(r) in P_m^{s/2,n/2-1}(2r²-1), m <= degree."""
    index = JacobiIndex.radial(n, s)
    rule = gauss_rule(quad_degree if quad_degree is not None else 2 * degree, index)
    radii = np.sqrt((rule.nodes + 1.0) / 2.0)
    vals = np.asarray(func(radii), dtype=float) * np.ones_like(radii)
    P = jacobi_all(degree, index, rule.nodes)
    norms = np.array([gamma_norm(m, index) for m in range(degree + 1)])
    return SpectralCoeffs(index, (P @ (rule.weights * vals)) / norms, weighted=False)


def reference_solve(problem, degree):
    """Deterministic radial solve: ĉ_m = f̂_m / μ_m in the weighted eigenbasis.

    Exact (to rounding) when f is a polynomial of degree <= ``degree`` in |x|².
    The projection of f uses a rule of degree 2·degree.
    """
    if problem.g is not None:
        raise ValueError("reference_solve needs homogeneous exterior data")
    unit = problem.to_unit_ball()
    fhat = project_radial(unit.f, unit.n, unit.s, degree)
    c = fhat.coeffs / mu_vector(degree, unit.n, unit.s)
    return SpectralCoeffs(fhat.index, c, weighted=True)


def reference_solution(problem, degree):
    """Callable u(r) on [0, problem.radius] from :func:`reference_solve`."""
    coeffs = reference_solve(problem, degree)
    R, n, s = problem.radius, problem.n, problem.s

    def u(r):
        return eval_weighted_expansion(coeffs, n, s, np.asarray(r, dtype=float) / R)
    return u
