"""
Counting polygonal 2-trees and succulents
=========================================

Solve the species equations for polygonal 2-trees (through 26 vertices) and
for succulents (through 19), then line the results up against the reference
tables shipped in ``polyspecies.tables``.

Run:  python demos/01_reproduce_tables.py
"""
import time

from polyspecies import ptrees, succulents
from polyspecies.tables import POLYGONAL_2TREES, SUCCULENTS

# Polygonal 2-trees.  `solve` returns every intermediate series (rooted at an
# edge, a polygon, a polygon with an edge) plus the final counts table.
t0 = time.perf_counter()
poly = ptrees.solve(26)
print(f"polygonal 2-trees through n = 26 in {time.perf_counter() - t0:.1f}s\n")

# Compare column by column.  The labeled column agrees everywhere; the
# unlabeled column parts ways with the reference from 12 vertices on.
print(f"{'n':>3} {'labeled':>45} {'unlabeled':>18} {'reference':>18}  diff")
for n in range(3, 27):
    lab, unl = poly.counts[n]
    ref_lab, ref_unl = POLYGONAL_2TREES[n]
    assert lab == ref_lab
    flag = "" if unl == ref_unl else f"{unl - ref_unl:+d}"
    print(f"{n:>3} {lab:>45} {unl:>18} {ref_unl:>18}  {flag}")

# Succulents: connected graphs whose blocks are polygonal 2-trees.  The block
# series is substituted into itself, so the *full* cycle index of polygonal
# 2-trees matters here, not just its counts.
t0 = time.perf_counter()
succ = succulents.solve(19)
print(f"\nsucculents through n = 19 in {time.perf_counter() - t0:.1f}s\n")
print(f"{'n':>3} {'labeled':>30} {'unlabeled':>13} {'reference':>13}  diff")
for n in range(20):
    lab, unl = succ.counts[n]
    ref_lab, ref_unl = SUCCULENTS[n]
    assert lab == ref_lab
    flag = "" if unl == ref_unl else f"{unl - ref_unl:+d}"
    print(f"{n:>3} {lab:>30} {unl:>13} {ref_unl:>13}  {flag}")

# Which column is right?  See 03_oracle_crosscheck.py: generating the graphs
# one by one and sorting them into isomorphism classes agrees with the series.
