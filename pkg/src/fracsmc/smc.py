"""Spectral Monte Carlo residual-correction iteration on the unit ball.

Nodal values at the radial Jacobi–Gauss nodes are first estimated by
walk-on-spheres.  Each iteration then:

1. interpolates the current nodal values with the weighted radial operator;
2. applies the fractional Laplacian to the interpolant exactly, through the
   eigenvalues μ_m;
3. estimates the correction ε = u - I u* at the nodes by walk-on-spheres
   on the residual problem (-Δ)^{s/2} ε = f - (-Δ)^{s/2} I u*, ε = 0
   outside;
4. adds ε to the nodal values.

R independent replicas run side by side and share one vectorized walk per
iteration.  Every replica, node and path draws from its own counter-based
stream, namespaced by (replica, iteration, node, path).
"""
from dataclasses import dataclass, field, replace
import math
from typing import Optional

import numpy as np

from . import rng as _rng
from .eigenbasis import mu_vector, reference_solution
from .interp import coeff_matrix_radial, node_radii
from .jacobi import JacobiIndex, gauss_rule, jacobi_all
from .wos import DEFAULT_MAX_STEPS, SOURCE_PARAMETERS, DomainBall, walk


@dataclass(frozen=True)
class SmcConfig:
    degree: int = 2
    M: int = 50
    K: int = 100
    master_seed: int = 0
    replicas: int = 1
    max_steps: int = DEFAULT_MAX_STEPS
    angular_seed: int = 0
    parameters: str = "derived"
    workers: int = 1

    def __post_init__(self):
        for name in ("M", "K", "replicas", "max_steps", "workers"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")
        if self.degree < 0:
            raise ValueError("degree must be >= 0")
        if self.parameters not in SOURCE_PARAMETERS:
            raise ValueError(f"parameters must be one of {SOURCE_PARAMETERS}")


@dataclass(frozen=True)
class SmcState:
    """Nodal values u*_i at iteration i for every replica (shape (R, N+1))."""
    iteration: int
    values: np.ndarray = field(repr=False)
    stderr: np.ndarray = field(repr=False)
    truncated: int
    rule: object = field(repr=False)
    points: np.ndarray = field(repr=False)
    last_correction: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def radii(self):
        return node_radii(self.rule)


@dataclass(frozen=True)
class ErrorSeries:
    """E^∞ per recorded iteration (i = 1 .. K+1) with per-node summaries."""
    e_inf: np.ndarray
    node_means: np.ndarray
    node_stderr: np.ndarray
    truncated: np.ndarray
    truth: np.ndarray


def node_points(rule, n, angular_seed=0):
    """Node radii sqrt((t_k+1)/2) placed along one random direction."""
    u = _rng.uniforms(_rng.path_keys(angular_seed, [0]), 0, 2 * ((n + 1) // 2))
    direction = _rng.directions(u, n)[0]
    return node_radii(rule)[:, None] * direction[None, :]


def error_inf(nodal_estimates, truth):
    """max_k |mean over replicas of (truth_k - estimate_k)|."""
    est = np.atleast_2d(np.asarray(nodal_estimates, dtype=float))
    truth = np.asarray(truth, dtype=float)
    if est.shape[-1] != truth.shape[-1] or truth.ndim != 1:
        raise ValueError(f"shape mismatch: estimates {est.shape}, truth {truth.shape}")
    return float(np.max(np.abs(np.mean(truth[None, :] - est, axis=0))))


def _check_problem(problem):
    if problem.g is not None:
        raise ValueError("the residual iteration needs homogeneous exterior data (g = None)")
    return problem.to_unit_ball()


def _path_keys(config, iteration, replicas, nodes):
    rep = np.arange(replicas, dtype=np.uint64)[:, None, None]
    node = np.arange(nodes, dtype=np.uint64)[None, :, None]
    path = np.arange(config.M, dtype=np.uint64)[None, None, :]
    seeds = _rng.spawn(config.master_seed, rep, iteration, node)
    return _rng.path_keys(seeds, path).reshape(-1, 2)


def node_seed(config, replica, iteration, node):
    """Master seed that ``estimate_u`` would need to reproduce one nodal estimate."""
    return int(_rng.spawn(config.master_seed, replica, iteration, node))


def _estimate_nodes(unit, state_points, config, iteration, replicas, source):
    npts = state_points.shape[0]
    x0 = np.broadcast_to(state_points[None, :, None, :],
                         (replicas, npts, config.M, unit.n)).reshape(-1, unit.n)
    keys = _path_keys(config, iteration, replicas, npts)
    vals, _, trunc = walk(x0, keys, unit.n, unit.s, DomainBall.unit(unit.n), source, None,
                          config.max_steps, config.parameters, config.workers)
    vals = vals.reshape(replicas, npts, config.M)
    mean = vals.mean(axis=2)
    stderr = (vals.std(axis=2, ddof=1) / math.sqrt(config.M) if config.M > 1
              else np.zeros_like(mean))
    return mean, stderr, int(np.count_nonzero(trunc))


def init_solution(problem, config):
    """u*_1 at the nodes from M walk-on-spheres paths per node and replica."""
    unit = _check_problem(problem)
    rule = gauss_rule(config.degree, JacobiIndex.radial(unit.n, unit.s))
    points = node_points(rule, unit.n, config.angular_seed)
    f = unit.f
    mean, stderr, trunc = _estimate_nodes(unit, points, config, 0, config.replicas,
                                          lambda r, ids: f(r))
    return SmcState(1, mean, stderr, trunc, rule, points)


def frac_lap_coefficients(state, problem):
    """û (shape (R, N+1)) with (-Δ)^{s/2} I u*_i = Σ û_m P_m(2r²-1)."""
    n, s = problem.n, problem.s
    C = coeff_matrix_radial(state.rule, n, s)
    return (state.values @ C.T) * mu_vector(state.rule.degree, n, s)[None, :]


def residual_source(state, problem, replica=0):
    """r ↦ f(r) - (-Δ)^{s/2} I u*_i (r) for one replica, on the unit ball."""
    unit = problem.to_unit_ball()
    uhat = frac_lap_coefficients(state, unit)[replica]
    index = state.rule.index
    f = unit.f

    def residual(r):
        r = np.asarray(r, dtype=float)
        P = jacobi_all(state.rule.degree, index, 2.0 * r * r - 1.0)
        return np.asarray(f(r), dtype=float) - np.tensordot(uhat, P, axes=1)
    return residual


def iterate(state, problem, config):
    """One residual correction: u*_{i+1} = u*_i + ε*_i at every node."""
    unit = _check_problem(problem)
    uhat = frac_lap_coefficients(state, unit)
    npts = state.rule.degree + 1
    per_replica = npts * config.M
    index = state.rule.index
    degree = state.rule.degree
    f = unit.f

    def source(r, ids):
        P = jacobi_all(degree, index, 2.0 * r * r - 1.0)
        smooth = np.einsum("pm,mp->p", uhat[ids // per_replica], P)
        return np.asarray(f(r), dtype=float) - smooth

    eps, stderr, trunc = _estimate_nodes(unit, state.points, config, state.iteration,
                                         state.values.shape[0], source)
    return replace(state, iteration=state.iteration + 1, values=state.values + eps,
                   stderr=stderr, truncated=trunc, last_correction=eps)


def _node_stderr(state):
    R = state.values.shape[0]
    if R > 1:
        return state.values.std(axis=0, ddof=1) / math.sqrt(R)
    return state.stderr[0]


def run(problem, exact, config, callback=None):
    """Run K corrections for every replica; E^∞ is recorded at i = 1 .. K+1.

    ``exact`` is the true radial solution on [0, problem.radius]; pass
    ``None`` to compare against the eigenbasis reference solution.
    """
    _check_problem(problem)
    if exact is None:
        exact = reference_solution(problem, max(32, 2 * config.degree))
    state = init_solution(problem, config)
    truth = np.asarray(exact(problem.radius * state.radii), dtype=float)
    e_inf, means, errs, truncs = [], [], [], []

    def record(st):
        e_inf.append(error_inf(st.values, truth))
        means.append(st.values.mean(axis=0))
        errs.append(_node_stderr(st))
        truncs.append(st.truncated)
        if callback is not None:
            callback(st, e_inf[-1])

    record(state)
    for _ in range(config.K):
        state = iterate(state, problem, config)
        record(state)
    series = ErrorSeries(np.array(e_inf), np.array(means), np.array(errs),
                         np.array(truncs, dtype=np.int64), truth)
    return state, series
