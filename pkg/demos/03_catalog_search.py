"""Reconstructing example fields for the open matrix cases.

Run: python demos/03_catalog_search.py
"""

import itertools

from twotower import (
    analyze,
    classify_open_case,
    complete_tuple,
    dmw_family,
    find_base_fields,
    lopez_family,
)

# Complete a partial tuple to the circulant case B; the smallest filler
# prime is 107.
specs = complete_tuple("B", [-3, -11, None, -7, -31], 200)
for spec in specs:
    print(f"case B completion: {list(spec.values())} "
          f"(classifies as {classify_open_case(spec).tag})")

# Base fields with big enough 2-class groups to feed the lemmas.
print("\nimaginary triples, |Cl_2| >= 16, rank <= 1, |D| <= 1100:")
for spec in find_base_fields("imaginary-3-neg", 16, 1, 1100):
    print(f"  D = {spec.discriminant}: discs {list(spec.values())}")
print("positive pairs, |Cl_2| >= 8, rank 0, D <= 3000:")
for spec in find_base_fields("real-pos-pair", 8, 0, 3000):
    print(f"  D = {spec.discriminant}: discs {list(spec.values())}")

# Two published infinite families provide base pairs/triples with exactly
# prescribed 2-class groups; each member is re-verified computationally.
print("\ncyclic family (2-class group C4):")
for spec in itertools.islice(dmw_family(2, 3), 3):
    print(f"  {list(spec.values())} -> D = {spec.discriminant}")
print("C2 x C4 family with -4:")
for spec in itertools.islice(lopez_family(2, 3), 2):
    print(f"  {list(spec.values())} -> D = {spec.discriminant}")

# Tie it together: complete an M32 field from a family member with
# |Cl_2| = 16 and let the analyzer prove its tower infinite.
f = next(dmw_family(4, 1))
q3, q5 = f.values()
k = complete_tuple("M32", [None, None, q3, None, q5], 400, count=1)[0]
report = analyze(k)
print(f"\nM32 field {list(k.values())}: {report.verdict} "
      f"via {report.certificate.criterion}")
