"""The four benchmark problems on the unit ball, plus named radial forms.

Each preset returns the problem and its exact solution (or ``None`` when
only a reference solution is available).
"""
import math

import numpy as np

from .eigenbasis import ProblemSpec, boundary_weight, mu, reference_solution
from .jacobi import JacobiIndex, jacobi_eval

EXAMPLES = (1, 2, 3, 4)
EXAMPLE_DIMENSION = {1: 1, 2: 2, 3: 2, 4: 10}
REFERENCE_DEGREE = 32


def example1_source(s):
    """(-Δ)^{s/2}[(1-x²)^{s/2}(x²+1)] on (-1, 1).

    With t = 2x²-1, x²+1 = ((s+4)/2 + P_1^{s/2,-1/2}(t)) / ((s+3)/2), so the
    source is (μ_1 P_1 + (s+4)/2 μ_0) / ((s+3)/2) with n = 1.
    """
    index = JacobiIndex.radial(1, s)
    mu0, mu1 = mu(0, 1, s), mu(1, 1, s)

    def f(r):
        t = 2.0 * np.asarray(r, dtype=float) ** 2 - 1.0
        return (mu1 * jacobi_eval(1, index, t) + 0.5 * (s + 4) * mu0) / (0.5 * (s + 3))
    return f


def example1_source_half_mu0(s):
    """The closed form with a ½μ_0 constant term; kept to document that it
    is not the fractional Laplacian of the stated solution."""
    index = JacobiIndex.radial(1, s)
    mu0, mu1 = mu(0, 1, s), mu(1, 1, s)

    def f(r):
        t = 2.0 * np.asarray(r, dtype=float) ** 2 - 1.0
        return (mu1 * jacobi_eval(1, index, t) + 0.5 * mu0) / (0.5 * (s + 3))
    return f


def example_problem(example, s, n=None):
    """(ProblemSpec, exact solution or None) for benchmark ``example``."""
    if example not in EXAMPLES:
        raise ValueError(f"unknown example {example!r}; choose from {EXAMPLES}")
    if n is None:
        n = EXAMPLE_DIMENSION[example]
    if example == 1:
        def exact(r):
            r = np.asarray(r, dtype=float)
            return boundary_weight(r, s) * (r * r + 1.0)
        return ProblemSpec(n, s, example1_source(s), name="example1"), exact
    if example == 2:
        const = mu(0, n, s)

        def f(r):
            return np.full(np.shape(r), const)

        def exact(r):
            return boundary_weight(r, s)
        return ProblemSpec(n, s, f, name="example2"), exact
    if example == 3:
        def f(r):
            r = np.asarray(r, dtype=float)
            return np.sin(r * r)
        return ProblemSpec(n, s, f, name="example3"), None
    const = (2.0 ** s * math.gamma(2 + s / 2) * math.gamma((n + s) / 2) / math.gamma(n / 2))

    def f(r):
        r = np.asarray(r, dtype=float)
        return const * (1.0 - (1.0 + s / n) * r * r)

    def exact(r):
        return boundary_weight(r, s) * (1.0 - np.asarray(r, dtype=float) ** 2)
    return ProblemSpec(n, s, f, name="example4"), exact


def truth_for(problem, exact, degree=REFERENCE_DEGREE):
    """Exact solution if known, else the eigenbasis reference solution."""
    return exact if exact is not None else reference_solution(problem, degree)


def radial_form(spec):
    """Parse a named radial form: ``zero``, ``const:C``, ``poly:c0,c1,..`` (in r²),
    ``sin-r2``, ``one``."""
    name, _, arg = spec.partition(":")
    if name == "zero":
        return lambda r: np.zeros(np.shape(r))
    if name == "one":
        return lambda r: np.ones(np.shape(r))
    if name == "const":
        c = float(arg)
        return lambda r: np.full(np.shape(r), c)
    if name == "poly":
        coeffs = [float(c) for c in arg.split(",") if c]
        if not coeffs:
            raise ValueError("poly needs at least one coefficient")
        return lambda r: np.polynomial.polynomial.polyval(np.asarray(r, dtype=float) ** 2, coeffs)
    if name == "sin-r2":
        return lambda r: np.sin(np.asarray(r, dtype=float) ** 2)
    raise ValueError(f"unknown radial form {spec!r}")
