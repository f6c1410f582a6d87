"""
Orientations, reflections, and why the full cycle index matters
===============================================================

Polygonal 2-trees are counted through their *coherently oriented* versions:
each polygonal 2-tree has exactly two orientations, and reversing all of them
is an action of the two-element group.  Counting orbits of that action
recovers the unoriented objects.

This script shows three things:

1. the labeled factor-2 law (orientation reversal acts freely on labeled trees);
2. two ways of letting reversal act on the root polygon -- reflecting corners
   and sides separately (geometric) or reflecting (corner, side) pairs as a
   unit (cyclic) -- give the same counts of polygonal 2-trees;
3. but only the geometric one gives the true cycle index, which is what
   succulents substitute into, so only it counts succulents correctly.

Run:  python demos/02_orientation_story.py
"""
from polyspecies import cis, oracle, ptrees, succulents
from polyspecies.psring import exponents

# 1. Factor-2 law.  Orient, count labeled structures, divide by two.
sol = ptrees.solve(12)
oriented = cis.labeled_counts(sol.a_oriented.part_e)
plain = cis.labeled_counts(sol.a_unoriented)
print("n   oriented   unoriented")
for n in range(3, 13):
    print(f"{n:<3} {oriented[n]:>14} {plain[n]:>14}   ratio {oriented[n] // plain[n]}")

# 2. The two polygon actions agree on counts ...
geo = ptrees.solve(14, polygon_action="geometric")
cyc = ptrees.solve(14, polygon_action="cyclic")
print("\nsame polygonal counts under both actions:", geo.counts == cyc.counts)


# ... but not on the cycle index.  Compare layer n with the cycle index read
# directly off the labeled graphs: for each cycle type, how many graphs does a
# permutation of that type fix?
def as_parts(series, n):
    out = {}
    for m, c in series.layers[n].items():
        out[tuple(sorted((i for i, e in exponents(m) for _ in range(e)), reverse=True))] = c
    return out


print("\ncycle index layer equals the graphs' own (polygonal 2-trees):")
for n in range(3, 8):
    truth = oracle.graph_cycle_index("polygonal", n)
    print(f"  n={n}: geometric {as_parts(geo.a_unoriented, n) == truth}, "
          f"cyclic {as_parts(cyc.a_unoriented, n) == truth}")

# Where do they differ at n = 5?  A square with a triangle on one side has a
# reflection through the midpoints of two opposite sides; it fixes sides, not
# (corner, side) pairs.
truth = oracle.graph_cycle_index("polygonal", 5)
bad = as_parts(cyc.a_unoriented, 5)
for lam in sorted(set(truth) | set(bad)):
    if truth.get(lam, 0) != bad.get(lam, 0):
        print(f"  cycle type {lam}: graphs {truth.get(lam, 0)}, cyclic model {bad.get(lam, 0)}")

# 3. Succulents substitute that cycle index, so the difference shows up in counts.
g = succulents.succulent_counts(10)
c = succulents.succulent_counts(10, polygon_action="cyclic")
print("\nunlabeled succulents   geometric   cyclic")
for n in range(1, 11):
    print(f"  n={n:<3} {g.unlabeled[n]:>20} {c.unlabeled[n]:>8}")
print("graph generation, n <= 7:", oracle.oracle_unlabeled_counts("succulent", 7)[1:])
