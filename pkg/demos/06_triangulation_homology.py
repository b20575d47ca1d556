"""From a finite presentation to a finite simplicial complex.

The presentation 2-complex (one vertex, a loop per generator, a polygon
per relator) is regularised by coning each polygon and then barycentrically
subdivided twice; the result is a genuine abstract simplicial complex with
the same fundamental group.  Integral homology is computed exactly, and an
edge-path presentation recovers the group from the complex.

Run with: python demos/06_triangulation_homology.py
"""

from gpforge import (
    abelianization,
    edge_path_presentation,
    parse,
    presentation,
    serialize_simplicial,
    simplicial_homology,
    triangulate,
)
from gpforge.topology import barycentric_subdivide, presentation_complex

fixtures = [
    ("circle <a | >", presentation(["a"])),
    ("torus <a,b | [a,b]>", parse("gens a b\nrel a^-1 b^-1 a b")),
    ("projective plane <a | a^2>", parse("gens a\nrel a^2")),
    ("BS(2,3)", parse("gens a t\nrel t^-1 a^2 t = a^3")),
    ("genus-2 surface", parse("gens a b c d\nrel a^-1 b^-1 a b c^-1 d^-1 c d")),
]

for name, p in fixtures:
    dc = presentation_complex(p) if p.relators or p.alphabet else None
    sc = triangulate(p)
    h0, h1, h2 = simplicial_homology(sc)
    chi = 1 - len(p.alphabet) + len(p.relators)
    print(f"{name}:")
    print(f"  chi = {sc.euler_characteristic()} (= 1 - |S| + |R| = {chi})")
    print(f"  vertices {sc.n_vertices}, edges {len(sc.edges())},"
          f" triangles {len(sc.two_simplices())}")
    print(f"  H0 = {h0}, H1 = {h1} (abelianization {abelianization(p)}), H2 = {h2}")

print("\neach barycentric subdivision multiplies the triangle count by 6:")
dc = presentation_complex(parse("gens a b\nrel a^-1 b^-1 a b"))
sub1 = barycentric_subdivide(dc)
sub2 = barycentric_subdivide(sub1)
print(" ", len(dc.triangles), "->", len(sub1.triangles), "->", len(sub2.triangles))

print("\nround trip through the edge-path presentation of the torus complex:")
sc = triangulate(parse("gens a b\nrel a^-1 b^-1 a b"))
ep = edge_path_presentation(sc)
print(f"  spanning-tree presentation: {len(ep.alphabet)} generators,"
      f" {len(ep.relators)} relators, abelianization {abelianization(ep)}")

print("\nthe circle triangulates to the 4-vertex simplicial circle:")
print(serialize_simplicial(triangulate(presentation(["a"]))))
