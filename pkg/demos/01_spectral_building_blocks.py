"""Spectral building blocks: eigenvalues, Gauss-Jacobi rules, and the exact
fractional Laplacian of a weighted interpolant.

Run: python demos/01_spectral_building_blocks.py
"""
import numpy as np

from fracsmc import (InterpolantRadial, JacobiIndex, eval_plain_radial, example_problem,
                     frac_lap_coeffs_radial, gauss_rule, lambda_1d, mu, reference_solution)

# %% Eigenvalues of the weighted Jacobi basis
s = 0.8
print("m   lambda_2m (interval)   mu_m (ball, n=1)")
for m in range(5):
    print(f"{m}   {lambda_1d(2 * m, s):20.15f}   {mu(m, 1, s):.15f}")

# %% A Gauss-Jacobi rule for the radial index (s/2, n/2 - 1)
rule = gauss_rule(4, JacobiIndex.radial(2, s))
print("\nnodes  :", np.array2string(rule.nodes, precision=6))
print("weights:", np.array2string(rule.weights, precision=6))
print("node radii sqrt((t+1)/2):", np.array2string(np.sqrt((rule.nodes + 1) / 2), precision=6))

# %% Interpolate the Example 4 solution in n = 10 and apply the operator exactly
problem, exact = example_problem(4, s)
interp = InterpolantRadial.from_function(exact, problem.n, s, 2)
r = np.linspace(0, 1, 6)
print("\nr      f(r)          (-Δ)^{s/2} I u(r)")
for ri, fi, gi in zip(r, problem.f(r), eval_plain_radial(frac_lap_coeffs_radial(interp), r)):
    print(f"{ri:.1f}  {fi:13.9f}  {gi:13.9f}")

# %% Example 3 has no closed form; the eigenbasis gives a reference solution
problem, _ = example_problem(3, 0.4)
for N in (4, 8, 16, 32):
    print(f"N_t={N:2d}  u(0) = {float(reference_solution(problem, N)(0.0)):.15f}")
