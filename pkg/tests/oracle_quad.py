"""Direct quadrature of the 1-D hypersingular integral, independent of the eigenbasis."""
import warnings

from scipy.integrate import IntegrationWarning, quad

from fracsmc.specfun import kernel_constant


def fraclap_1d(u, x, s, far=3.0):
    """(-Δ)^{s/2} u(x) for u supported on [-1, 1], via second differences.

    C ∫_0^∞ (2u(x) - u(x+h) - u(x-h)) h^{-1-s} dh, split at the kinks of u
    at h = 1 ∓ x; beyond ``far`` only the 2u(x) term survives.
    """
    def integrand(h):
        return (2.0 * u(x) - u(x + h) - u(x - h)) / h ** (1.0 + s)

    total, lo = 0.0, 0.0
    with warnings.catch_warnings():
        # round-off notices near the kinks; the callers' tolerances gate accuracy
        warnings.simplefilter("ignore", IntegrationWarning)
        for hi in sorted({1.0 - x, 1.0 + x}) + [far]:
            total += quad(integrand, lo, hi, epsabs=1e-11, epsrel=1e-10, limit=400)[0]
            lo = hi
    total += 2.0 * u(x) * far ** (-s) / s
    return kernel_constant(1, s) * total
