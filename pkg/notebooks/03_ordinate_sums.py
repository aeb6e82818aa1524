# %% [markdown]
# # Sums of ordinates
#
# Z_mu(T) is the multiset of sums gamma_1 + ... + gamma_mu over ordered tuples
# with total at most T.  Its size, its repeated sums and its own pair
# correlation G_mu are all computed here.

# %%
import math

from _data import catalog

from zetacorr import ordsums

cat = catalog()
for T in (500.0, 1000.0, 2000.0):
    ms = ordsums.build_sum_multiset(cat, 2, T)
    rec = ordsums.total_by_recursion(cat, 2, T)
    pred = ordsums.cardinality_prediction(2, T)
    print(f"T={T:g}: |Z_2| = {ms.total} (recursion {rec}), main term {pred:.0f}, ratio {ms.total / pred:.3f}")

# %% [markdown]
# The main term is approached slowly: at these heights the ratio is well below 1
# and climbs with T.
#
# Every pair (gamma, gamma') with gamma != gamma' gives the same sum twice, so
# the count of equal-sum tuple pairs is forced to be 2|Z_2(T)| - N(T/2).

# %%
T = 1000.0
ms = ordsums.build_sum_multiset(cat, 2, T, merge_tol=2e-8)
d = ordsums.delta_mu(ms)
print(f"Delta_2 = {d},  2|Z_2| - N(T/2) = {2 * ms.total - cat.count(T / 2)}")
print(f"Delta_2 / N(T)^2 = {d / cat.count(T) ** 2:.4f}")

# %% [markdown]
# ## G_2 against its main term

# %%
T = 500.0
ms = ordsums.build_sum_multiset(cat, 2, T)
for a in (0.05, 0.1, 0.2, 0.4):
    g = ordsums.g_mu(ms, T ** a, T)
    p = ordsums.theorem2_prediction(2, a, T, strict=False)
    print(f"alpha={a}: G_2 = {g.value:.4g}  main term {p:.4g}  ratio {g.value / p:.3g}")
print("desk-scale deficit: |Z_2| / main term =", round(ms.total / ordsums.cardinality_prediction(2, T), 3), "and log(T/2pi)/log T =", round(math.log(T / (2 * math.pi)) / math.log(T), 3))
