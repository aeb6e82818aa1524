# %% [markdown]
# # Zeros and primes
#
# A kernel-weighted sum over the zeros equals a sum over prime powers plus
# archimedean terms.  With 10^5 zeros the two sides agree to about 1e-9 once
# the continuation of the zero sum beyond the table is included.

# %%
from _data import catalog

from zetacorr import arith, explicit

cat = catalog()
print(" x       t    nu   lhs.real          rhs.real          residual")
for x in (1.0, 2.0, 10.0):
    for t in (0.0, 100.0):
        r = explicit.identity_residual(cat, x, t, 1.0)
        print(f"{x:4g} {t:7g} {r.nu:4g}  {r.lhs.real:16.10f}  {r.rhs.real:16.10f}  {r.residual:.2e}")

# %% [markdown]
# ## Gonek sums
#
# S(n, T) = sum over gamma <= T of n^{i gamma} grows like -Lambda(n) T / (2 pi sqrt n):
# it is linear in T at prime powers and stays small elsewhere.

# %%
T = 1e4
for n in (2, 3, 4, 6, 7, 8, 10):
    s, c = arith.gonek_sum(cat, n, T)
    print(f"n={n:2d}: S = {s.real:9.2f}{s.imag:+9.2f}i  main {c.lambda_n * T:9.2f}  |S - main| / E = {abs(s - c.lambda_n * T) / c.error_scale:.2f}")

# %% [markdown]
# ## Prime sums behind the error terms

# %%
for x in (1e3, 1e4, 1e5, 1e6):
    rs = [arith.lemma_beef(x, 0, 0), arith.lemma_wagyu(x, 1, 2), arith.lemma_steak(x, 2, 0)]
    print(f"x={x:8g}: " + "  ".join(f"{r.ratio:.4f}" for r in rs))
