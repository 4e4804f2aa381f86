# %% [markdown]
# A principal polarization on an abelian surface with QM by O_6
#
# Pure quaternions mu in O with D | nrd(mu) give line bundles through the
# alternating form E(x, y) = -trd(mu x conj(y)) / D. Its Pfaffian is the
# degree, so nrd(mu) = D gives a principal polarization.

# %%
import random

from igusa_locus.polarization import al_witnesses, riemann_form, rosati_positive, sample_theta0, witness_multiplier
from igusa_locus.quaternion import OrderCatalog, find_mu, find_twists

O = OrderCatalog.load()[6]
mu = find_mu(O, 6)
print("order basis:", ", ".join(str(e) for e in O.basis))
print("mu =", mu, "  mu^2 =", mu * mu)

E = riemann_form(O, mu)
for row in E.matrix:
    print("   ", " ".join(f"{x:>3}" for x in row))
print("Pfaffian:", E.pfaffian(), "  Rosati form positive:", rosati_positive(O, mu))

# %% Degrees of a few other elements of the reduced different
for x in sample_theta0(O, 4, random.Random(1), box=3):
    print(f"nrd({x}) = {x.nrd()}  ->  degree {abs(riemann_form(O, x).pfaffian())}")

# %% Twists: pure chi anticommuting with mu that normalize O.
twists = find_twists(O, mu, bound=3)
for chi, m in twists[:6]:
    print(f"chi = {str(chi):<12}  nrd = {str(chi.nrd()):>4}  m = {m}  conj(chi) mu chi = {witness_multiplier(mu, mu, chi)} mu")

# chi = i + j carries mu to 2 mu, an Atkin-Lehner witness for m = 2
print([(str(w.omega), w.m) for w in al_witnesses(O, mu, mu, 1)][:6])
