"""Fractional-weighted interpolation on Jacobi–Gauss nodes.

Two operators share one idea: interpolate the smooth factor v/ρ with
Lagrange polynomials on the nodes, then multiply by the boundary weight ρ.
Written in the weighted Jacobi basis, the fractional Laplacian of the
interpolant is a diagonal map on coefficients.

The Lagrange polynomials are never formed in monomial form; all evaluation
goes through the Jacobi expansion.
"""
from dataclasses import dataclass, field

import numpy as np

from .eigenbasis import (SpectralCoeffs, boundary_weight, eval_expansion,
                         lambda_vector, mu_vector)
from .jacobi import JacobiIndex, gamma_norm, gauss_rule, jacobi_all


def _norms(rule):
    return np.array([gamma_norm(m, rule.index) for m in range(rule.degree + 1)])


# -- interval operator, index (s/2, s/2) ------------------------------------

def coeff_matrix_1d(rule):
    """c_{mk} = (1-t_k²)^{-s/2} P_m(t_k) ω_k / γ_m, rows m, columns k."""
    idx = rule.index
    if idx.alpha != idx.beta:
        raise ValueError("the interval operator needs a symmetric index (s/2, s/2)")
    t = rule.nodes
    P = jacobi_all(rule.degree, idx, t)
    singular = ((1.0 - t) * (1.0 + t)) ** (-idx.alpha)
    return P * (singular * rule.weights)[None, :] / _norms(rule)[:, None]


@dataclass(frozen=True)
class Interpolant1D:
    rule: object
    nodal_values: np.ndarray = field(repr=False)
    s: float

    def __post_init__(self):
        v = np.array(self.nodal_values, dtype=float)
        if v.shape != (self.rule.degree + 1,):
            raise ValueError("need one nodal value per node")
        if self.rule.index != JacobiIndex.interval(self.s):
            raise ValueError("rule index must be (s/2, s/2)")
        v.setflags(write=False)
        object.__setattr__(self, "nodal_values", v)

    @classmethod
    def from_function(cls, v, s, degree):
        rule = gauss_rule(degree, JacobiIndex.interval(s))
        return cls(rule, np.asarray(v(rule.nodes), dtype=float), s)

    def coefficients(self):
        """Coefficients a_m with I v = (1-t²)^{s/2} Σ a_m P_m."""
        return coeff_matrix_1d(self.rule) @ self.nodal_values


def eval_1d(interp, t):
    t = np.asarray(t, dtype=float)
    if np.any(~((t >= -1) & (t <= 1))):
        raise ValueError("t must lie in [-1, 1]")
    a = SpectralCoeffs(interp.rule.index, interp.coefficients())
    out = boundary_weight(t, interp.s) * eval_expansion(a, t)
    return float(out) if np.ndim(out) == 0 else out


def lagrange_basis_1d(rule, s, k, t):
    """l_k^{s/2}(t) = ((1-t²)/(1-t_k²))^{s/2} h_k(t), direct product form."""
    t = np.asarray(t, dtype=float)
    nodes = rule.nodes
    h = np.ones_like(t)
    for i, ti in enumerate(nodes):
        if i != k:
            h = h * (t - ti) / (nodes[k] - ti)
    psi = (((1.0 - t) * (1.0 + t)) / ((1.0 - nodes[k]) * (1.0 + nodes[k]))) ** (s / 2.0)
    return psi * h


def frac_lap_coeffs_1d(interp):
    """v̂_m = λ_m Σ_k c_{mk} v(t_k): (-Δ)^{s/2} I v = Σ v̂_m P_m^{s/2,s/2}."""
    lam = lambda_vector(interp.rule.degree, interp.s)
    return SpectralCoeffs(interp.rule.index, lam * interp.coefficients(), weighted=False)


# -- radial operator, index (s/2, n/2 - 1) -----------------------------------

def node_radii(rule):
    """|x_k| = sqrt((t_k + 1)/2)."""
    return np.sqrt((rule.nodes + 1.0) / 2.0)


def coeff_matrix_radial(rule, n, s):
    """C̃_{m,k} = 2^{s/2} (1-t_k)^{-s/2} ω_k P_m(t_k) / γ_m, rows m, columns k."""
    if rule.index != JacobiIndex.radial(n, s):
        raise ValueError("rule index must be (s/2, n/2 - 1)")
    t = rule.nodes
    P = jacobi_all(rule.degree, rule.index, t)
    factor = (2.0 / (1.0 - t)) ** (s / 2.0) * rule.weights
    return P * factor[None, :] / _norms(rule)[:, None]


@dataclass(frozen=True)
class InterpolantRadial:
    rule: object
    nodal_values: np.ndarray = field(repr=False)
    n: int
    s: float

    def __post_init__(self):
        v = np.array(self.nodal_values, dtype=float)
        if v.shape[-1] != self.rule.degree + 1:
            raise ValueError("need one nodal value per node")
        if self.rule.index != JacobiIndex.radial(self.n, self.s):
            raise ValueError("rule index must be (s/2, n/2 - 1)")
        v.setflags(write=False)
        object.__setattr__(self, "nodal_values", v)

    @classmethod
    def from_function(cls, u, n, s, degree):
        rule = gauss_rule(degree, JacobiIndex.radial(n, s))
        return cls(rule, np.asarray(u(node_radii(rule)), dtype=float), n, s)

    @property
    def radii(self):
        return node_radii(self.rule)

    def coefficients(self):
        """ĉ with I u = ρ Σ ĉ_m P_m(2r²-1); batched over leading axes of the values."""
        return self.nodal_values @ coeff_matrix_radial(self.rule, self.n, self.s).T


def eval_radial(interp, x_norm):
    r = np.asarray(x_norm, dtype=float)
    if np.any(~((r >= 0) & (r <= 1))):
        raise ValueError("radius must lie in [0, 1]")
    c = interp.coefficients()
    P = jacobi_all(interp.rule.degree, interp.rule.index, 2.0 * r * r - 1.0)
    out = boundary_weight(r, interp.s) * np.tensordot(c, P, axes=([-1], [0]))
    return float(out) if np.ndim(out) == 0 else out


def frac_lap_coeffs_radial(interp):
    """û_m = μ_m Σ_k C̃_{m,k} u(x_k): (-Δ)^{s/2} I u = Σ û_m P_m(2|x|²-1)."""
    mu = mu_vector(interp.rule.degree, interp.n, interp.s)
    c = interp.coefficients()
    if c.ndim != 1:
        raise ValueError("batched values: use coefficients() and scale by mu directly")
    return SpectralCoeffs(interp.rule.index, mu * c, weighted=False)


def eval_plain_radial(coeffs, x_norm):
    """Σ û_m P_m(2r²-1) at radius r."""
    r = np.asarray(x_norm, dtype=float)
    return eval_expansion(coeffs, 2.0 * r * r - 1.0)
