"""Prime splitting in Hilbert 2-class fields: proved sweeps and open data.

Run: python demos/02_splitting_experiments.py
"""

from twotower import QuadFieldSpec, explore_symbol_dependence, verify_imag_triple, verify_real_pair

# Both of these statements are theorems; the sweeps must come back clean.
for l1, l2 in [(5, 29), (5, 461)]:
    rep = verify_real_pair(l1, l2, 10**4)
    print(f"real pair ({l1},{l2}): {rep.describe()}")

for triple in [(7, 19, 3), (31, 3, 11)]:
    rep = verify_imag_triple(*triple, 10**4)
    print(f"imaginary triple {triple}: {rep.describe()} "
          f"(ordering {list(rep.base_field.values())})")

# Does the 2-part of a prime's ideal-class order depend only on its
# Kronecker symbols at the prime discriminants?  Swapping the fourth
# prime 661 -> 2609 keeps the Redei matrix yet changes the answer on the
# vector (+1,-1,-1,+1), so any such rule needs more than the matrix.
print()
for l4 in (661, 2609):
    f = QuadFieldSpec.from_disc_values([+5, +29, +109, l4])
    summary = explore_symbol_dependence(f, 10**5).summary()
    print(f"l4 = {l4}: vector (+1,-1,-1,+1) sees order 2-parts {summary['+1,-1,-1,+1']}")
