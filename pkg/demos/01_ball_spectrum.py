"""
The Dirichlet spectrum of the fractional Laplacian on the unit disk.

Run with `python3 demos/01_ball_spectrum.py`.
"""
import numpy as np
from scipy.special import jn_zeros

from fraclap import SpectralParams, assemble_spectrum, dyda_multiplier, solve_radial

# %% The basis functions (1-|x|^2)^s P_n(2|x|^2-1) are mapped by (-Delta)^s
# onto polynomials; the multipliers are Gamma ratios.
for n in range(4):
    print(f"mu_{n}(d=1, s=1/2) = {dyda_multiplier(n, 1, 0.5):.6f}")

# %% Radial eigenvalues in dimension d = 2, s = 1/2, with the relative change
# when the basis grows from 50 to 75 functions.
for pair in solve_radial(SpectralParams(2, 0.5), 4):
    print(f"lambda_(2,{pair.index_n}) = {pair.eigenvalue:.12f}   rel. change {pair.convergence_err:.1e}")

# %% The disk spectrum: the degree-l angular branch is the radial problem in
# dimension 2 + 2l, each eigenvalue repeated dim H_l times.
print("\n  eigenvalue        l  n  mult")
for e in assemble_spectrum(2, 0.5, 10):
    print(f"  {e.eigenvalue:14.10f}  {e.angular_degree:2d} {e.radial_index:2d}  {e.multiplicity:3d}")

# %% As s -> 1 the eigenvalues approach the squared Bessel zeros of the
# Dirichlet Laplacian on the disk.
limits = [jn_zeros(0, 1)[0] ** 2, jn_zeros(1, 1)[0] ** 2, jn_zeros(0, 2)[1] ** 2]
for s in (0.5, 0.9, 0.99):
    e = assemble_spectrum(2, s, 6, M=60)
    radial = [x.eigenvalue for x in e if x.angular_degree == 0]
    first_l1 = next(x.eigenvalue for x in e if x.angular_degree == 1)
    print(f"s={s:4.2f}: lambda_1={radial[0]:8.4f}  lambda_ominus={first_l1:8.4f}  lambda_circ={radial[1]:8.4f}")
print(f"s=1   : {limits[0]:17.4f}  {limits[1]:22.4f}  {limits[2]:20.4f}")
