"""
Settling disagreements by brute force
=====================================

Where the series and a reference table disagree, generate the graphs
themselves: start from a polygon, glue new polygons along edges (polygonal
2-trees) or glue blocks at vertices (succulents), and keep one representative
per isomorphism class using canonical forms.

Labeled counts come from expanding each class over all vertex relabelings, so
they are only feasible to about 8 vertices; unlabeled classes go further.

Run:  python demos/03_oracle_crosscheck.py [--deep]

``--deep`` also generates polygonal 2-trees on 12 vertices (about six minutes),
the first row where the unlabeled reference value differs.
"""
import sys
import time
from math import comb

from polyspecies import oracle, ptrees, succulents
from polyspecies.tables import POLYGONAL_2TREES, SUCCULENTS

deep = "--deep" in sys.argv

# Labeled and unlabeled, both families, against the series.
for family, top, table in (("polygonal", 8, ptrees.polygonal_counts(8)),
                           ("succulent", 7, succulents.succulent_counts(7))):
    t0 = time.perf_counter()
    brute = oracle.oracle_counts(family, top)
    print(f"{family}: generated n <= {top} in {time.perf_counter() - t0:.1f}s")
    for n in range(1, top + 1):
        print(f"  n={n}: graphs {brute[n]}, series {table[n]}")

# Unlabeled only, past the point where the succulent reference disagrees.
t0 = time.perf_counter()
classes = oracle.oracle_unlabeled_counts("succulent", 9)
series = succulents.succulent_counts(9)
print(f"\nsucculent isomorphism classes (n <= 9, {time.perf_counter() - t0:.0f}s)")
for n in range(6, 10):
    print(f"  n={n}: graphs {classes[n]:>5}  series {series.unlabeled[n]:>5}  reference {SUCCULENTS.unlabeled[n]:>5}")

# The k = 3 case has a closed form for labeled counts to compare with as well.
t3 = ptrees.kgonal_counts(3, 12)
print("\nclassical 2-trees, labeled: series vs C(n,2)(2n-3)^(n-4)")
for n in range(4, 13):
    print(f"  n={n}: {t3.labeled[n]} {comb(n, 2) * (2 * n - 3) ** (n - 4)}")

if deep:
    t0 = time.perf_counter()
    classes = oracle.oracle_unlabeled_counts("polygonal", 12)
    print(f"\npolygonal 2-tree classes on 12 vertices: {classes[12]} "
          f"(series {ptrees.polygonal_counts(12).unlabeled[12]}, reference {POLYGONAL_2TREES.unlabeled[12]}; "
          f"{time.perf_counter() - t0:.0f}s)")
