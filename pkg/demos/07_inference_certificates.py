"""The inference engine: facts, rules, certificates, consistency.

Bounded-cohomology properties are never computed numerically (the
associated decision problems are undecidable); instead, construction trees
carry asserted base facts on their atoms and structural tags recorded by
the combinators, and a fixed catalog of sound rules derives what follows.
Every derived fact comes with a replayable certificate tree whose leaves
are assertions.

Run with: python demos/07_inference_certificates.py
"""

from gpforge import (
    atom,
    check_consistency,
    derive,
    direct_product,
    meier_gamma_expr,
    mu_stage,
    presentation,
    query,
)
from gpforge.inference import replay_certificate
from gpforge.reductions import hyperbolic_manifold_atom

print("== the hull of a 2-generated group ==")
mu = mu_stage(atom(presentation(["x", "y"]), facts=(("FinGen", 2),)), 2)
d = derive(mu)
for predicate, arg in [("BoundedlyAcyclic", None), ("ContainsF2", None),
                       ("FinGen", 5), ("NotFinPres", None)]:
    cert = query(d, mu, predicate, arg)
    label = predicate if arg is None else f"{predicate}({arg})"
    print(f"  {label}: via {cert.rule}")

print("\n== Meier's group is large in all even degrees ==")
gamma = meier_gamma_expr()
d = derive(gamma, max_degree=8)
cert = query(d, gamma, "LargeHb", 8)
print(cert.render())
print("certificate replays:", replay_certificate(d, cert))

print("\n== a finitely presented group with large bounded cohomology ==")
tl = direct_product(
    atom(presentation(["p", "q"]), facts=(("ThompsonT", None),), name="thompson-T"),
    hyperbolic_manifold_atom(3),
)
d = derive(tl, max_degree=8)
degrees = [n for n in range(2, 9) if d.has(tl, "LargeHb", n)]
print("large bounded cohomology derived in degrees:", degrees)

print("\n== consistency checking ==")
print("healthy fixtures report", check_consistency(d), "contradictions")
bad = atom(presentation(["a"]), facts=(("Amenable", None), ("ContainsF2", None)))
print("an adversarial atom is flagged:", check_consistency(derive(bad)))
