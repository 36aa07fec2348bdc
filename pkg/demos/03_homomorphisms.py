"""
Counting homomorphisms of small chordal patterns
================================================

Patterns with a perfect elimination order whose back-neighborhoods are at
most an edge are counted by dynamic programming over that order.  The
two-triangle pattern J separates the circulant pair, matching the
edge-based test's verdict.
"""

from ebwl import (brute_force_hom_count, cycle, figure2_pair, find_peo_tw2, hom_count,
                  two_triangles)

G, H = figure2_pair()
J = two_triangles()

peo = find_peo_tw2(J)
print("order", peo.order, "cases", peo.cases)

print("hom(J, G) =", hom_count(J, G))
print("hom(J, H) =", hom_count(J, H))
print("brute force agrees:", brute_force_hom_count(J, G), brute_force_hom_count(J, H))

# a 4-cycle has no such order, so auto falls back to brute force
print("hom(C4, G) =", hom_count(cycle(4), G))
