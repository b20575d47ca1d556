"""Witness families: one word-problem instance, five group constructions.

Given a source group with a decidable word problem (stand-ins for the
general recursively-presented case), every word w yields presentations
whose global properties encode whether w = 1:

  Lambda_w   trivial            iff w = 1, else a fresh infinite-order letter
  Gamma_w    = Lambda_w * Z:    amenable iff w = 1, else acylindrically hyperbolic
  W(G,L,w)   push-out killing G's generators iff w = 1
  Pi_w       product of two push-outs with large bounded cohomology in a
             chosen degree d on the nontrivial branch
  Delta_w    Gamma_w x F2^(d-1), the L2-Betti/cost carrier (facts only)

Run with: python demos/05_witness_pipeline.py
"""

from gpforge import (
    delta_w,
    derive,
    f2_atom,
    free_source,
    gamma_w,
    lambda_w,
    parse_word,
    pi_w,
    query,
    serialize,
    tietze_simplify,
    witness_w,
)

src = free_source()
trivial_word = parse_word("a b b^-1 a^-1")
hard_word = parse_word("a^-1 b^-1 a b")

print("== trivial branch (w = a b b^-1 a^-1 = 1) ==")
print("Lambda_w:", serialize(lambda_w(src, trivial_word).presentation) or "(empty)")
print("Gamma_w: ", serialize(gamma_w(src, trivial_word).presentation), " (a copy of Z)")
ww = witness_w(f2_atom(), src, trivial_word)
print("W(F2,L,w) simplifies to:", serialize(tietze_simplify(ww.presentation)) or "(empty)")

print("\n== nontrivial branch (w = [a,b]) ==")
gw = gamma_w(src, hard_word)
print("Gamma_w generators:", gw.presentation.alphabet.names, " witness wbar =", gw.wbar)
d = derive(gw.expr)
print("derived: acylindrically hyperbolic ->",
      query(d, gw.expr, "AcylHyp") is not None)
print("derived: large H^2_b and H^3_b ->",
      d.has(gw.expr, "LargeHb", 2), d.has(gw.expr, "LargeHb", 3))

print("\nPi_w in degree 5 (one factor over F2, one over a hyperbolic")
print("3-manifold group):")
pw = pi_w(src, hard_word, 5)
cert = query(derive(pw.expr, max_degree=5), pw.expr, "LargeHb", 5)
print(cert.render())

print("\nDelta_w in degree 3 keeps the facts on its factors:")
dw = delta_w(src, hard_word, 3)
print("generators:", len(dw.presentation.alphabet),
      " relators:", len(dw.presentation.relators))
