"""
Writing species equations as text
=================================

The built-in pipelines are also available as plain-text systems; any other
recursive species can be written the same way and solved by iteration.

Run:  python demos/04_species_language.py
"""
from polyspecies import cis, specdsl

# Rooted trees: a root vertex with a set of subtrees.  Recursion is fine as
# long as every cycle of references gains at least one atom.
trees = specdsl.parse("T = X * E(T)")
T = specdsl.solve_system(trees, 10)["T"]
print("rooted trees, unlabeled:", cis.unlabeled_counts(T)[1:])
print("rooted trees, labeled:  ", cis.labeled_counts(T)[1:])

# Free trees by the dissymmetry theorem: vertex-rooted + edge-rooted - both.
# An edge is an unordered pair of subtrees; C[2] is the same as a 2-set.
free = specdsl.parse("""
    T = X * E(T);
    F = T + C[2](T) - T * T;
""")
F = specdsl.solve_system(free, 10)["F"]
print("free trees, unlabeled:  ", cis.unlabeled_counts(F)[1:])

# The shipped systems: polygonal 2-trees with orientation handled by quot2.
print("\nshipped systems:", specdsl.shipped_systems())
print(specdsl.system_text("polygonal"))
result = specdsl.solve_system(specdsl.load_system("polygonal"), 10)
print("polygonal 2-trees, unlabeled:", cis.unlabeled_counts(result["Ap"])[3:])

# k-gonal 2-trees take the polygon size as a parameter.
sq = specdsl.solve_system(specdsl.load_system("kgonal"), 12, params={"k": 4})["Ak"]
print("4-gonal 2-trees, labeled:    ", cis.labeled_counts(sq)[4::2])

# Syntax errors point at the offending spot; recursion that never gains an
# atom is rejected before any iteration starts.
try:
    specdsl.parse("A = L[2](X")
except specdsl.SpecSyntaxError as exc:
    print("syntax error:", exc)
try:
    specdsl.check_guarded(specdsl.parse("B = 1 + B"))
except specdsl.SpecError as exc:
    print("rejected:", exc)

# Every system prints back as text that parses to the same system.
system = specdsl.load_system("succulents")
assert specdsl.parse(specdsl.pretty(system)) == system
print("\nround trip ok:\n" + specdsl.pretty(system))
