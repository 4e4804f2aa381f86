# %% [markdown]
# Quaternion algebras and their maximal orders
#
# (a, b / Q) ramifies at the places where the Hilbert symbol is -1. The
# discriminant is the product of the finite ramified primes; an order is
# maximal exactly when its own discriminant matches.

# %%
from igusa_locus.quaternion import (
    INF, OrderCatalog, QAlgebra, algebra_for_disc, hilbert_symbol, is_maximal, order_disc,
    ramified_set, saturate_to_maximal, standard_order,
)

for a, b in [(-1, -1), (-1, 3), (-10, 2), (-15, 3), (2, 3)]:
    places = ", ".join(str(v) for v in sorted(ramified_set(a, b), key=lambda v: (v == INF, v)))
    print(f"({a}, {b}): ramified at {{{places}}}")

print("(-1, 3)_2 =", hilbert_symbol(-1, 3, 2), "  (-1, 3)_3 =", hilbert_symbol(-1, 3, 3))

# %% Z<1, i, j, ij> is never maximal here; saturation closes the gap prime by prime.
B = QAlgebra(-1, 3)
O0 = standard_order(B)
print("standard order disc:", order_disc(O0), " maximal:", is_maximal(O0))
O = saturate_to_maximal(-1, 3)
print("saturated basis:", [str(e) for e in O.basis], " disc:", order_disc(O))

# %% Presentations chosen automatically for larger discriminants
for D in (210, 330, 1155):
    a, b = algebra_for_disc(D)
    O = saturate_to_maximal(a, b)
    print(f"D = {D}: ({a}, {b}), maximal order disc {order_disc(O)}")

# %% The shipped catalog holds validated orders for every admissible D <= 100.
catalog = OrderCatalog.load()
print(len(catalog.orders), "catalog orders:", sorted(catalog.orders))
