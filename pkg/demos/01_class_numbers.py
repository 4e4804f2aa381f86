# %% [markdown]
# Class numbers of imaginary quadratic orders
#
# Reduced primitive forms a x^2 + b xy + c y^2 with |b| <= a <= c are unique
# representatives of their SL2(Z) classes, so counting them gives h(delta).
# We list a few, compare against a brute-force reduction, and build the
# quantity h~(-D) that counts principal polarizations.

# %%
from igusa_locus import oracles
from igusa_locus.quadforms import ambiguous_count, class_number, cm_orders_above, h_tilde, reduced_forms

for delta in (-23, -24, -40, -60, -84):
    forms = ", ".join(str(f) for f in reduced_forms(delta))
    print(f"h({delta}) = {class_number(delta)}   forms: {forms}   genera: {ambiguous_count(delta)}")

# %% The brute-force check reduces every primitive form in a box and deduplicates.
brute = oracles.brute_class_numbers(-2000)
agree = all(class_number(d) == brute.get(d, 0) for d in range(-2000, 0) if d % 4 in (0, 1))
print("fast count agrees with brute force down to -2000:", agree)

# %% For D = 15, -D = 1 mod 4, so both Z[sqrt(-15)] and the maximal order contribute.
for D in (6, 10, 15, 39):
    parts = " + ".join(f"h({d})" for d in cm_orders_above(D))
    print(f"h~(-{D}) = {parts} = {h_tilde(D)}")
