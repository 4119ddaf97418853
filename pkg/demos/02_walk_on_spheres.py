"""Walk-on-spheres for the fractional Poisson equation on the unit ball.

Run: python demos/02_walk_on_spheres.py
"""
import numpy as np

from fracsmc import estimate_u, example_problem, rng
from fracsmc.oracles import exit_survival, zeta_zscore
from fracsmc.wos import sample_exit_batch

# %% The exit radius from a ball has a closed-form law
s, M = 1.2, 100_000
Z = sample_exit_batch(np.zeros(2), 1.0, 2, s, rng.path_keys(0, np.arange(M)))
rho = np.linalg.norm(Z, axis=1)
print("rho    empirical P(|Z|>rho)   closed form")
for x in (1.05, 1.5, 3.0, 10.0):
    print(f"{x:5.2f}  {np.mean(rho > x):.4f}                 {exit_survival(x, s):.4f}")

# %% One-ball calibration: the expected source weight at the center
for n in (1, 2, 10):
    z, ratio = zeta_zscore(n, 0.6, M=200_000)
    print(f"n={n:2d}  estimate / exact = {ratio:.4f}   |z| = {z:.2f}")

# %% Pointwise estimates of Example 2, u(x) = (1 - |x|^2)^{s/2}
problem, exact = example_problem(2, 0.8)
for x0 in (0.0, 0.5, 0.9):
    est = estimate_u(np.array([x0, 0.0]), problem, M=50_000, master_seed=1, workers=4)
    print(f"|x|={x0:.1f}  u={exact(x0):.5f}  estimate={est.mean:.5f} ± {est.stderr:.5f}  "
          f"mean path length {est.mean_path_length:.2f}")
