"""Independent numerical oracles, runnable as named suites.

Every check reports a measured value against a gate.  Checks marked
``required=False`` are informational: they describe a rejected
alternative and never fail a suite.
"""
from dataclasses import dataclass
from functools import lru_cache
import math

import numpy as np
from scipy.integrate import quad

from . import rng as _rng
from .eigenbasis import lambda_1d, mu, reference_solution
from .jacobi import JacobiIndex, gauss_rule
from .problems import example_problem
from .specfun import beta, reg_inc_beta
from .wos import interior_radius_ratio, one_step_weight, sample_exit_batch, zeta_center

SUITES = ("incbeta", "quadrature", "eigen", "exit", "zeta", "reference")
S_GRID = tuple(round(0.2 * k, 1) for k in range(1, 10))


@dataclass(frozen=True)
class OracleCheck:
    suite: str
    name: str
    measured: float
    gate: float
    passed: bool
    required: bool = True

    def line(self):
        verdict = "PASS" if self.passed else ("FAIL" if self.required else "info")
        return f"{verdict:4s}  {self.suite:10s} {self.name:40s} measured={self.measured:.3e} gate={self.gate:.1e}"


def _check(suite, name, measured, gate, required=True):
    return OracleCheck(suite, name, float(measured), float(gate), bool(measured <= gate), required)


# -- incomplete beta -----------------------------------------------------------

def incbeta_by_quadrature(x, a, b):
    """I(x; a, b) by adaptive quadrature with the algebraic endpoint weight at 0."""
    val, _ = quad(lambda t: (1.0 - t) ** (b - 1.0), 0.0, x, weight="alg", wvar=(a - 1.0, 0.0),
                  epsabs=0.0, epsrel=1e-13, limit=200)
    return val / beta(a, b)


def incbeta_suite(gate=1e-10):
    worst = 0.0
    for a in (0.2, 0.7, 1.4, 5.0, 20.0):
        for b in (0.2, 0.7, 1.4, 5.0, 20.0):
            for x in (0.01, 0.3, 0.5, 0.9, 0.999):
                worst = max(worst, abs(reg_inc_beta(x, a, b) - incbeta_by_quadrature(x, a, b)))
    return [_check("incbeta", "max |I - quadrature| over 125 points", worst, gate)]


# -- quadrature exactness --------------------------------------------------------

def monomial_moments(jmax, index):
    """∫ t^j (1-t)^α (1+t)^β dt for j = 0..jmax from the closed-form recurrence."""
    a, b = index.alpha, index.beta
    m = np.empty(jmax + 1)
    m[0] = 2.0 ** (a + b + 1) * beta(a + 1, b + 1)
    if jmax >= 1:
        m[1] = m[0] * (b - a) / (a + b + 2)
    for j in range(1, jmax):
        m[j + 1] = (j * m[j - 1] + (b - a) * m[j]) / (j + a + b + 2)
    return m


@lru_cache(maxsize=None)
def _abs_moment(j, a, b):
    """∫ |t|^j (1-t)^a (1+t)^b dt, the scale used for relative errors of odd moments."""
    right = quad(lambda t: t ** j * (1 + t) ** b, 0, 1, weight="alg", wvar=(0.0, a))[0]
    left = quad(lambda t: t ** j * (1 + t) ** a, 0, 1, weight="alg", wvar=(0.0, b))[0]
    return right + left


def quadrature_error(degree, index):
    """Worst relative error of the rule on t^j, j = 0..2N+1."""
    rule = gauss_rule(degree, index)
    jmax = 2 * degree + 1
    exact = monomial_moments(jmax, index)
    powers = rule.nodes[None, :] ** np.arange(jmax + 1)[:, None]
    approx = powers @ rule.weights
    scale = np.array([max(abs(exact[j]), _abs_moment(j, index.alpha, index.beta))
                      for j in range(jmax + 1)])
    return float(np.max(np.abs(approx - exact) / scale))


def quadrature_indices(s_grid=S_GRID, dims=(1, 2, 3, 10)):
    out = []
    for s in s_grid:
        out.append(JacobiIndex.interval(s))
        out.extend(JacobiIndex.radial(n, s) for n in dims)
    return list(dict.fromkeys(out))


def quadrature_suite(max_degree=32, gate=1e-11, s_grid=(0.4, 1.0, 1.6)):
    checks = []
    for index in quadrature_indices(s_grid):
        errs = [quadrature_error(d, index) for d in range(max_degree + 1)]
        worst = int(np.argmax(errs))
        checks.append(_check("quadrature", f"(a,b)=({index.alpha:g},{index.beta:g}) worst N_t={worst}",
                             errs[worst], gate))
    return checks


# -- eigenvalue identity ---------------------------------------------------------

def eigen_table(mmax=10, s_grid=S_GRID):
    """Rows (m, max relative gap between λ_{2m} and μ_m at n = 1 over s)."""
    return [(m, max(abs(lambda_1d(2 * m, s) - mu(m, 1, s)) / abs(mu(m, 1, s)) for s in s_grid))
            for m in range(mmax + 1)]


def eigen_suite(gate=1e-12):
    return [_check("eigen", f"lambda_{2 * m} vs mu_{m} (n=1)", err, gate) for m, err in eigen_table()]


# -- exit law ----------------------------------------------------------------

def exit_survival(rho, s):
    """P(|Z - X|/r > ρ) = I(ρ^{-2}; s/2, 1 - s/2)."""
    return reg_inc_beta(np.maximum(np.asarray(rho, dtype=float), 1.0) ** -2.0, s / 2.0, 1.0 - s / 2.0)


def exit_cdf_by_quadrature(rho, s):
    """∫_1^ρ (2/π) sin(πs/2) (u²-1)^{-s/2} u^{-1} du, the Poisson-kernel radial marginal."""
    c = 2.0 * math.sin(math.pi * s / 2.0) / math.pi
    if rho <= 1.0:
        return 0.0
    val, _ = quad(lambda u: (u + 1.0) ** (-s / 2.0) / u, 1.0, rho, weight="alg",
                  wvar=(-s / 2.0, 0.0), limit=200)
    return c * val


def exit_ratio_samples(n, s, M, seed=0):
    center = np.linspace(0.1, -0.2, n)
    r = 0.7
    keys = _rng.path_keys(_rng.spawn(seed, n, round(1000 * s)), np.arange(M))
    Z = sample_exit_batch(center, r, n, s, keys, step=0)
    return np.sort(np.linalg.norm(Z - center, axis=1) / r)


def exit_deviations(n, s, M=100_000, seed=0, grid_points=200):
    """(KS distance to the beta law, max ECDF gap to the kernel quadrature)."""
    x = exit_ratio_samples(n, s, M, seed)
    F = 1.0 - exit_survival(x, s)
    i = np.arange(1, M + 1)
    ks = float(np.max(np.maximum(i / M - F, F - (i - 1) / M)))
    probe = np.quantile(x, np.linspace(0.005, 0.995, grid_points))
    ecdf = np.searchsorted(x, probe, side="right") / M
    Fq = np.array([exit_cdf_by_quadrature(p, s) for p in probe])
    return ks, float(np.max(np.abs(ecdf - Fq)))


def exit_suite(M=100_000, seed=0, gate=0.01, cases=((1, 0.4), (1, 1.6), (2, 0.4), (2, 1.6),
                                                    (10, 0.4), (10, 1.6))):
    checks = []
    for n, s in cases:
        ks, kq = exit_deviations(n, s, M, seed)
        checks.append(_check("exit", f"n={n} s={s} vs incomplete beta", ks, gate))
        checks.append(_check("exit", f"n={n} s={s} vs kernel quadrature", kq, gate))
    return checks


# -- one-ball calibration ------------------------------------------------------

def zeta_estimate(n, s, M=1_000_000, seed=0, parameters="derived", r=1.0):
    """(sample mean, stderr) of the one-step weight with f ≡ 1 at the ball center."""
    u = _rng.uniforms(_rng.path_keys(seed, np.arange(M)), 0, 2)
    w = one_step_weight(n, s, r, interior_radius_ratio(u[:, 1], s), parameters)
    return float(w.mean()), float(w.std(ddof=1) / math.sqrt(M))


def zeta_zscore(n, s, M=1_000_000, seed=0, parameters="derived"):
    mean, se = zeta_estimate(n, s, M, seed, parameters)
    return abs(mean - zeta_center(n, s)) / se, mean / zeta_center(n, s)


def zeta_suite(n=2, s=0.8, M=1_000_000, seed=0):
    z, ratio = zeta_zscore(n, s, M, seed, "derived")
    checks = [_check("zeta", f"n={n} s={s} derived, ratio={ratio:.5f} (z-score)", z, 3.0)]
    if s < n:
        z, ratio = zeta_zscore(n, s, M, seed, "complement")
        checks.append(_check("zeta", f"n={n} s={s} complement, ratio={ratio:.5f} (z-score)", z, 3.0,
                             required=False))
    return checks


# -- reference solver ----------------------------------------------------------

def reference_suite(gate_exact=1e-10, gate_self=1e-12):
    r = np.linspace(0.0, 1.0, 1000)
    checks = []
    for example, n in ((2, 2), (4, 10)):
        worst = 0.0
        for s in (0.4, 0.8, 1.2, 1.6):
            problem, exact = example_problem(example, s, n)
            worst = max(worst, float(np.max(np.abs(reference_solution(problem, 2)(r) - exact(r)))))
        checks.append(_check("reference", f"example {example} exact at N_t=2", worst, gate_exact))
    for s in (0.4, 1.6):
        problem, _ = example_problem(3, s)
        gap = np.max(np.abs(reference_solution(problem, 32)(r) - reference_solution(problem, 48)(r)))
        checks.append(_check("reference", f"example 3 s={s} N_t=32 vs 48", gap, gate_self))
    return checks


def run_suite(name, **kwargs):
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {SUITES}")
    return globals()[f"{name}_suite"](**kwargs)
