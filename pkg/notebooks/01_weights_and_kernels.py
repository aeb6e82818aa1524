# %% [markdown]
# # The weight family w_{nu,k}
#
# Montgomery's pair correlation uses the Lorentzian weight 4/(4+u^2).  The
# family w_{nu,k} generalizes it; every member is even, equals 1 at u = 0 and
# decays like |u|^{-2k-2}.  Raising k sharpens the central peak and adds
# oscillating side lobes.

# %%
import numpy as np

from zetacorr.weights import (
    WeightParams,
    decay_constant,
    general_weight,
    kernel_product_integral,
    near_zero_constant,
    tail_mass,
)

u = np.linspace(-10, 10, 9)
print("u      " + "  ".join(f"{x:8.2f}" for x in u))
for k in range(4):
    w = general_weight(WeightParams(1.0, k), u)
    print(f"w_1{k}   " + "  ".join(f"{x:8.4f}" for x in w))

# %% [markdown]
# Near zero, w_{nu,k}(u) is 1 - c u^2 + ..., and far out it is about D |u|^{-2k-2}.
# Both constants grow with k, and the tail mass beyond a window shrinks.

# %%
for k in range(4):
    p = WeightParams(1.0, k)
    print(f"k={k}  near-zero c={near_zero_constant(p):.4f}  decay D={decay_constant(p):.4g}  tail mass beyond 50: {tail_mass(p, 50.0):.3e}")

# %% [markdown]
# ## Kernel duality
#
# Each weight comes from a product of two shifted derivative kernels.  The
# integral over the real line, done by quadrature, matches the closed form
# 4 pi (2k)!/(2 nu)^{2k+1} w_{nu,k}(delta).

# %%
for nu, k, d in [(1.0, 0, 0.5), (1.0, 2, 1.0), (0.75, 3, 2.0), (2.0, 1, 5.0)]:
    r = kernel_product_integral(WeightParams(nu, k), d, rtol=np.inf, details=True)
    print(f"nu={nu} k={k} delta={d}: quadrature {r.quadrature:.12g}  closed {r.closed_form:.12g}  discrepancy {r.rel_discrepancy:.1e}")
