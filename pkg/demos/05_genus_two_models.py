# %% [markdown]
# Genus-2 curves whose Jacobians have QM by O_6 and O_10
#
# Both families live over genus-1 base curves. Points with a vanishing
# denominator or a repeated root of f are flagged as degenerate.

# %%
from igusa_locus.arith import QuadExtVal
from igusa_locus.hm_families import coeffs, curve, discriminant, rational_points

for t, s, degenerate in rational_points(10, 20):
    print(f"family 10 at (t, s) = ({t}, {s}):", "degenerate" if degenerate else "smooth")

c = curve(10, 2, 0)
print("f =", [str(x) for x in c.f_coeffs], " disc =", discriminant(c.f_coeffs))

# %% Family 6 has no small rational points, but quadratic ones are easy to write down.
r2 = QuadExtVal.sqrt(2)
print(coeffs(6, 0, r2))
c6 = curve(6, 0, r2)
print("f =", [str(x) for x in c6.f_coeffs], " disc =", discriminant(c6.f_coeffs))
print("rational points of height <= 10 on the family 6 base:", rational_points(6, 10))
