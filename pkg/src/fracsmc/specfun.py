"""Scalar special functions: log-gamma, beta, incomplete beta, C_{n,s}.

All routines accept numpy arrays and broadcast; scalars come back as
0-d results converted to ``float``.
"""
import math

import numpy as np
from scipy.special import digamma, gammaln

_EULER_GAMMA = 0.57721566490153286061
_TINY = 1e-300
_CF_EPS = 1e-16
_CF_MAXIT = 1000


def _out(value):
    value = np.asarray(value, dtype=float)
    return float(value) if value.ndim == 0 else value


def log_gamma(z):
    """Natural log of the gamma function for z > 0."""
    z = np.asarray(z, dtype=float)
    if np.any(~(z > 0)):
        raise ValueError("log_gamma requires z > 0")
    return _out(gammaln(z))


def log_beta(a, b):
    return _out(np.asarray(log_gamma(a)) + np.asarray(log_gamma(b))
                - np.asarray(log_gamma(np.add(a, b))))


def beta(a, b):
    """B(a, b) = Γ(a)Γ(b)/Γ(a+b), evaluated in log space."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if np.any(~(a > 0)) or np.any(~(b > 0)):
        raise ValueError("beta requires a > 0 and b > 0")
    # symmetric by construction: the gammaln terms are summed in a fixed order
    lo, hi = np.minimum(a, b), np.maximum(a, b)
    return _out(np.exp(log_beta(lo, hi)))


def beta_continued(a, b):
    """B(a, b) analytically continued to non-positive b (a > 0, a + b > 0).

    Returns inf at the poles b = 0, -1, ...
    """
    if b > 0:
        return beta(a, b)
    if b == int(b):
        return math.inf
    return math.gamma(a) * math.gamma(b) / math.gamma(a + b)


def _betacf(x, a, b):
    """Modified Lentz evaluation of the incomplete-beta continued fraction."""
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = np.ones_like(x)
    d = 1.0 - qab * x / qap
    d = np.where(np.abs(d) < _TINY, _TINY, d)
    d = 1.0 / d
    h = d.copy()
    done = np.zeros(x.shape, dtype=bool)
    for m in range(1, _CF_MAXIT + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        d = np.where(np.abs(d) < _TINY, _TINY, d)
        c = 1.0 + aa / c
        c = np.where(np.abs(c) < _TINY, _TINY, c)
        d = 1.0 / d
        h = np.where(done, h, h * d * c)
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        d = np.where(np.abs(d) < _TINY, _TINY, d)
        c = 1.0 + aa / c
        c = np.where(np.abs(c) < _TINY, _TINY, c)
        d = 1.0 / d
        delta = d * c
        h = np.where(done, h, h * delta)
        done |= np.abs(delta - 1.0) < _CF_EPS
        if done.all():
            return h
    raise RuntimeError("incomplete beta continued fraction did not converge")


def reg_inc_beta(x, a, b):
    """Regularized incomplete beta I(x; a, b) for 0 <= x <= 1, a, b > 0.

    Continued fraction on whichever side of x = (a+1)/(a+b+2) converges
    fast, mirrored through I(x; a, b) = 1 - I(1-x; b, a) otherwise.
    """
    x, a, b = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (x, a, b)))
    if np.any(~((x >= 0) & (x <= 1))):
        raise ValueError("reg_inc_beta requires 0 <= x <= 1")
    if np.any(~(a > 0)) or np.any(~(b > 0)):
        raise ValueError("reg_inc_beta requires a > 0 and b > 0")
    out = np.empty(x.shape)
    out[x == 0] = 0.0
    out[x == 1] = 1.0
    inner = (x > 0) & (x < 1)
    if inner.any():
        xi, ai, bi = x[inner], a[inner], b[inner]
        flip = xi >= (ai + 1.0) / (ai + bi + 2.0)
        xs = np.where(flip, 1.0 - xi, xi)
        as_ = np.where(flip, bi, ai)
        bs = np.where(flip, ai, bi)
        log_front = (as_ * np.log(xs) + bs * np.log1p(-xs)
                     - (gammaln(as_) + gammaln(bs) - gammaln(as_ + bs)))
        val = np.exp(log_front) * _betacf(xs, as_, bs) / as_
        out[inner] = np.where(flip, 1.0 - val, val)
    return _out(np.clip(out, 0.0, 1.0))


def _pochhammer_series(z, p, q, terms):
    """sum_k (p)_k / k! * z^k / (q + k), k = 0..terms-1."""
    total = np.zeros_like(z)
    coef = np.ones_like(z)
    for k in range(terms):
        total = total + coef / (q + k)
        coef = coef * (p + k) / (k + 1) * z
    return total


def inc_beta(x, a, b):
    """Non-regularized incomplete beta B(x; a, b) = ∫_0^x t^{a-1}(1-t)^{b-1} dt.

    Defined for 0 <= x < 1, a > 0 and any b > -1 (for b <= 0 the value is the
    analytic continuation, still finite because x < 1).
    """
    x = np.asarray(x, dtype=float)
    a = float(a)
    b = float(b)
    if a <= 0 or b <= -1:
        raise ValueError("inc_beta requires a > 0 and b > -1")
    if np.any(~((x >= 0) & (x < 1))):
        raise ValueError("inc_beta requires 0 <= x < 1")
    if b > 0:
        return _out(reg_inc_beta(x, a, b) * beta(a, b))
    out = np.zeros(x.shape)
    terms = 80
    low = (x > 0) & (x < 0.5)
    if low.any():
        xl = x[low]
        out[low] = xl ** a * _pochhammer_series(xl, 1.0 - b, a, terms)
    high = x >= 0.5
    if high.any():
        y = 1.0 - x[high]
        if abs(b) < 1e-9:
            # b -> 0 limit: B(a,b) - y^b/b -> -gamma_E - psi(a) - ln y
            out[high] = (-_EULER_GAMMA - digamma(a) - np.log(y)
                         - _shifted_log_tail(y, a, terms))
        else:
            out[high] = beta_continued(a, b) - y ** b * _pochhammer_series(y, 1.0 - a, b, terms)
    return _out(out)


def _shifted_log_tail(y, a, terms):
    """sum_{k>=1} (1-a)_k / k! * y^k / k."""
    total = np.zeros_like(y)
    coef = np.ones_like(y)
    for k in range(1, terms):
        coef = coef * (1.0 - a + k - 1) / k * y
        total = total + coef / k
    return total


def c_ns(n, s):
    """Normalizing constant of the integral fractional Laplacian in R^n."""
    if n < 1 or int(n) != n:
        raise ValueError("n must be a positive integer")
    if not 0 < s < 2:
        raise ValueError("s must lie in (0, 2)")
    log_c = (s * math.log(2.0) + log_gamma((n + s) / 2.0)
             - 0.5 * n * math.log(math.pi) - log_gamma(1.0 - s / 2.0))
    return math.exp(log_c)


def kernel_constant(n, s):
    """(s/2)·C_{n,s}: the kernel constant under which the Jacobi eigenrelations hold.

    With this constant, (-Δ)^{s/2} has Fourier symbol |ξ|^s and
    (-Δ)^{s/2}(1-|x|²)_+^{s/2} = μ_0.  ``c_ns`` alone is larger by 2/s.
    """
    return 0.5 * s * c_ns(n, s)
