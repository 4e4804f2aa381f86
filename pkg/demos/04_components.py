# %% [markdown]
# Counting components of the quaternionic locus
#
# Components correspond to Atkin-Lehner orbits of principal polarizations.
# With pi0 = h~(-D) / 2 polarizations and |W| = 2^(2r), the orbit equation
# pins down rho (the number of components) or a small feasible set.

# %%
from collections import Counter

from igusa_locus.locus import analyze, tabulate

for D in (6, 10, 15, 26, 33, 39):
    rep = analyze(D)
    rho = rep.rho_exact if rep.rho_exact is not None else f"one of {rep.rho_feasible}"
    print(f"D = {D:>3}: h~ = {rep.h_tilde}, pi0 = {rep.pi0}, twisting = {rep.twisting} {rep.twist_divisors}, "
          f"rho = {rho}, irreducible = {rep.irreducible}")

# %% Which small discriminants give an irreducible locus?
reports = tabulate(2, 1000)
print("irreducible, D <= 1000:", [r.D for r in reports if r.irreducible])

# %% Distribution of rho across admissible D <= 1000 (exact values only)
print(sorted(Counter(r.rho_exact for r in reports if r.rho_exact is not None).items()))
print("undetermined:", sum(r.rho_exact is None for r in reports))
