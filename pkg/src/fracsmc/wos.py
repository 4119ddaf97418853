"""Walk-on-spheres for the fractional Laplacian on ball domains.

Each step sits at the center of the largest ball B(X_k, r) inside the
domain.  One interior point Y is drawn to score the source term, and the
exit point of the isotropic s-stable process from that ball becomes X_{k+1}.
A path ends when it jumps out of the domain.

Interior radii are drawn as |Y - X_k| = r U^{1/s}.  Against that density the
occupation measure of the ball is reproduced by the weight
η(r) · f̃(γ) / s, where η is the closed-form step weight and f̃ is the
incomplete-beta source factor with Green's-function parameters
((n-s)/2, s/2).  The estimator is exactly unbiased for the one-step
identity ζ(center) = r^s Γ(n/2) / (2^s Γ(1+s/2) Γ((n+s)/2)).
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
import math

import numpy as np
from scipy.special import betaincinv

from . import rng as _rng
from .specfun import beta_continued, inc_beta, log_gamma, reg_inc_beta

SOURCE_PARAMETERS = ("derived", "complement")
DEFAULT_MAX_STEPS = 1000


@dataclass(frozen=True)
class DomainBall:
    center: np.ndarray = field(repr=False)
    radius: float

    def __post_init__(self):
        c = np.array(self.center, dtype=float).ravel()
        c.setflags(write=False)
        object.__setattr__(self, "center", c)
        if not self.radius > 0:
            raise ValueError("radius must be positive")

    @classmethod
    def unit(cls, n, radius=1.0):
        return cls(np.zeros(n), radius)

    @property
    def n(self):
        return self.center.size

    def dist_to_boundary(self, x):
        """radius - |x - center| (positive inside)."""
        x = np.asarray(x, dtype=float)
        return self.radius - np.linalg.norm(x - self.center, axis=-1)


@dataclass(frozen=True)
class WosEstimate:
    mean: float
    stderr: float
    samples: int
    mean_path_length: float
    max_path_length: int
    truncated_paths: int


def zeta_center(n, s, r=1.0):
    """Expected occupation ∫ Q_r(0, y) dy of the ball at its center."""
    return math.exp(s * math.log(r) + log_gamma(n / 2) - s * math.log(2.0)
                    - log_gamma(1 + s / 2) - log_gamma((n + s) / 2))


# -- samplers ------------------------------------------------------------------

def _pairs(n):
    return (n + 1) // 2


def slots_per_step(n):
    """Uniform draws consumed per walk step: exit radius, interior radius, two directions."""
    return 2 + 4 * _pairs(n)


def exit_radius_ratio(u, s):
    """|Z - X|/r = W^{-1/2}, W ~ Beta(s/2, 1 - s/2), by inversion of ``u``."""
    w = betaincinv(s / 2.0, 1.0 - s / 2.0, u)
    return np.maximum(w, 1e-300) ** -0.5


def interior_radius_ratio(u, s):
    """|Y - X|/r = U^{1/s}: radial density s γ^{s-1} on (0, 1)."""
    return u ** (1.0 / s)


def _draw_offsets(u, n, s):
    q = _pairs(n)
    exit_dir = _rng.directions(u[:, 2:2 + 2 * q], n)
    inner_dir = _rng.directions(u[:, 2 + 2 * q:2 + 4 * q], n)
    return (exit_radius_ratio(u[:, 0], s), exit_dir,
            interior_radius_ratio(u[:, 1], s), inner_dir)


def sample_exit_batch(center, r, n, s, keys, step=0):
    """Exit points from B(center, r) for every key row; shape (P, n)."""
    u = _rng.uniforms(keys, step, slots_per_step(n))
    rho, direction, _, _ = _draw_offsets(u, n, s)
    return np.asarray(center, dtype=float) + (np.asarray(r) * rho)[..., None] * direction


def sample_interior_batch(center, r, n, s, keys, step=0):
    """Interior points of B(center, r) for every key row; shape (P, n)."""
    u = _rng.uniforms(keys, step, slots_per_step(n))
    _, _, gam, direction = _draw_offsets(u, n, s)
    return np.asarray(center, dtype=float) + (np.asarray(r) * gam)[..., None] * direction


def sample_exit(center, r, n, s, rng, step=0):
    """One exit point of the s-stable process started at the center of B(center, r)."""
    return sample_exit_batch(center, r, n, s, rng.key, step)[0]


def sample_interior(center, r, n, s, rng, step=0):
    """One interior scoring point in B(center, r)."""
    return sample_interior_batch(center, r, n, s, rng.key, step)[0]


# -- weights -------------------------------------------------------------------

def step_weight(n, s, r_next):
    """η = B((n-s)/2, s/2) r^s / (2^{s-1} Γ(s/2)²)."""
    b = (n - s) / 2.0
    if b <= 0:
        raise ValueError("step_weight needs s < n")
    return beta_continued(b, s / 2.0) * np.asarray(r_next, dtype=float) ** s / (
        2.0 ** (s - 1) * math.gamma(s / 2.0) ** 2)


def _check_ratio(gamma_ratio):
    g = np.asarray(gamma_ratio, dtype=float)
    if np.any(~((g > 0) & (g < 1))):
        raise ValueError("gamma_ratio must lie in (0, 1)")
    return g


def source_factor(n, s, gamma_ratio, parameters="derived"):
    """f̃/f = 1 - I(γ²; (n-s)/2, p) with p = s/2 (derived) or 1 - s/2 (complement).

    Evaluated as I(1-γ²; p, (n-s)/2) to keep accuracy as γ -> 1.
    """
    g = _check_ratio(gamma_ratio)
    b = (n - s) / 2.0
    if b <= 0:
        raise ValueError("source_factor needs s < n")
    if parameters == "derived":
        p = s / 2.0
    elif parameters == "complement":
        p = 1.0 - s / 2.0
    else:
        raise ValueError(f"parameters must be one of {SOURCE_PARAMETERS}")
    return reg_inc_beta((1.0 - g) * (1.0 + g), p, b)


def one_step_weight(n, s, r, gamma_ratio, parameters="derived"):
    """Weight multiplying f(Y) for one step, given the interior draw density.

    For s < n this is step_weight · source_factor / s.  For n = 1, s >= 1
    the beta parameter (n-s)/2 is non-positive; the same Green's-function
    profile is then evaluated directly through the continued incomplete
    beta B(1-γ²; s/2, (n-s)/2).
    """
    g = _check_ratio(gamma_ratio)
    b = (n - s) / 2.0
    if b > 0:
        return step_weight(n, s, r) * source_factor(n, s, g, parameters) / s
    if parameters != "derived":
        raise ValueError("the complement source factor is undefined for s >= n")
    scale = 1.0 / (s * 2.0 ** (s - 1) * math.gamma(s / 2.0) ** 2)
    return scale * np.asarray(r, dtype=float) ** s * inc_beta((1.0 - g) * (1.0 + g), s / 2.0, b)


# -- paths -----------------------------------------------------------------------

def _walk_chunk(x0, keys, ids, n, s, domain, source, exterior, max_steps, parameters):
    P = x0.shape[0]
    X = x0.copy()
    acc = np.zeros(P)
    steps = np.zeros(P, dtype=np.int64)
    alive = np.ones(P, dtype=bool)
    c = domain.center
    nslots = slots_per_step(n)
    for k in range(max_steps):
        live = np.flatnonzero(alive)
        if live.size == 0:
            break
        Xa = X[live]
        dist = domain.radius - np.linalg.norm(Xa - c, axis=1)
        u = _rng.uniforms(keys[live], k, nslots)
        rho, exit_dir, gam, inner_dir = _draw_offsets(u, n, s)
        Y = Xa + (dist * gam)[:, None] * inner_dir
        fy = np.asarray(source(np.linalg.norm(Y - c, axis=1), ids[live]), dtype=float)
        acc[live] += one_step_weight(n, s, dist, gam, parameters) * fy
        Xn = Xa + (dist * rho)[:, None] * exit_dir
        X[live] = Xn
        steps[live] += 1
        out = np.linalg.norm(Xn - c, axis=1) >= domain.radius
        if exterior is not None and out.any():
            gone = live[out]
            acc[gone] += np.asarray(exterior(np.linalg.norm(Xn[out] - c, axis=1), ids[gone]), dtype=float)
        alive[live[out]] = False
    return acc, steps, alive


def walk(x0, keys, n, s, domain, source, exterior=None, max_steps=DEFAULT_MAX_STEPS,
         parameters="derived", workers=1):
    """Run independent paths; returns (scores, step counts, truncated mask).

    ``x0`` is (P, n) and ``keys`` (P, 2) per-path RNG keys.  ``source`` and
    ``exterior`` are called as ``func(radii, path_ids)`` with radii measured
    from the domain center.  Each path depends only on its own key, so the
    output is identical for any ``workers``.
    """
    if parameters not in SOURCE_PARAMETERS:
        raise ValueError(f"parameters must be one of {SOURCE_PARAMETERS}")
    x0 = np.asarray(x0, dtype=float).reshape(-1, n)
    keys = np.asarray(keys, dtype=np.uint32).reshape(-1, 2)
    if np.any(domain.dist_to_boundary(x0) <= 0):
        raise ValueError("starting points must lie strictly inside the domain")
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    P = x0.shape[0]
    ids = np.arange(P)
    args = (n, s, domain, source, exterior, max_steps, parameters)
    if workers <= 1 or P < 2 * workers:
        return _walk_chunk(x0, keys, ids, *args)
    bounds = np.linspace(0, P, workers + 1).astype(int)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(
            lambda ab: _walk_chunk(x0[ab[0]:ab[1]], keys[ab[0]:ab[1]], ids[ab[0]:ab[1]], *args),
            zip(bounds[:-1], bounds[1:])))
    return tuple(np.concatenate([p[i] for p in parts]) for i in range(3))


def _problem_callables(problem):
    f, g = problem.f, problem.g
    source = lambda r, ids: f(r)
    exterior = None if g is None else (lambda r, ids: g(r))
    return source, exterior


def run_path(x0, problem, domain, max_steps, rng, parameters="derived"):
    """One sample S of the estimator: (value, steps, truncated)."""
    source, exterior = _problem_callables(problem)
    val, steps, trunc = walk(np.asarray(x0, dtype=float)[None, :], rng.key, problem.n,
                             problem.s, domain, source, exterior, max_steps, parameters)
    return float(val[0]), int(steps[0]), bool(trunc[0])


def summarize(values, steps, truncated):
    M = values.size
    stderr = float(np.std(values, ddof=1) / math.sqrt(M)) if M > 1 else 0.0
    return WosEstimate(float(np.mean(values)), stderr, M, float(np.mean(steps)),
                       int(np.max(steps)), int(np.count_nonzero(truncated)))


def estimate_u(x0, problem, domain=None, M=1000, max_steps=DEFAULT_MAX_STEPS, master_seed=0,
               parameters="derived", workers=1):
    """Monte Carlo estimate of u(x0) from M paths with stream ids 0..M-1."""
    if M < 1:
        raise ValueError("M must be >= 1")
    if domain is None:
        domain = DomainBall.unit(problem.n, problem.radius)
    x0 = np.asarray(x0, dtype=float).ravel()
    keys = _rng.path_keys(master_seed, np.arange(M))
    source, exterior = _problem_callables(problem)
    vals, steps, trunc = walk(np.broadcast_to(x0, (M, problem.n)), keys, problem.n, problem.s,
                              domain, source, exterior, max_steps, parameters, workers)
    return summarize(vals, steps, trunc)
