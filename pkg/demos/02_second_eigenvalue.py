"""
Which eigenfunction is second?  Compare the equatorial level lambda_{N+2,1}
with the second radial level lambda_{N,2} over a grid of dimensions and
orders, and look at the nodal structure of the radial candidate.
"""
import numpy as np

from fraclap import SpectralParams, nodal_radius, second_split, solve_radial

orders = (0.1, 0.25, 0.5, 0.75, 0.9)

# %% The gap lambda_circ - lambda_ominus next to the discretization error.
print(" N " + "".join(f"   s={s:<5}" for s in orders))
for N in range(2, 10):
    rows = [second_split(N, s) for s in orders]
    print(f"{N:2d} " + "".join(f"{r.gap:10.4f}" for r in rows),
          "  all certified" if all(r.certified for r in rows) else "  UNCERTIFIED")

# %% The gap shrinks as s -> 0, but its ratio to the error estimate stays huge.
r = second_split(2, 0.1)
print(f"\nN=2, s=0.1: gap {r.gap:.3e}, error estimate {r.conv_err:.1e}")

# %% Radial eigenfunctions change sign once per level; the outermost sign
# change is the nodal radius used when polarizing.
for s in (0.25, 0.5, 0.75):
    pairs = solve_radial(SpectralParams(2, s, 60), 4)
    print(f"s={s}: nodal radii", np.round([nodal_radius(p) for p in pairs], 4))
