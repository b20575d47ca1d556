"""Words, free reduction, and the presentation file format.

Run with: python demos/01_words_and_presentations.py
"""

from gpforge import (
    cyclically_reduce,
    format_word,
    parse,
    parse_word,
    serialize,
    tietze_simplify,
)

print("== free-group words ==")
w = parse_word("t^-1 a^2 t a^-3")
print("word:", format_word(w), " length:", len(w))
print("inverse:", format_word(~w))
print("square:", format_word(w * w))

print("\nfree reduction happens on construction:")
print("a a^-1 b  ->", format_word(parse_word("a a^-1 b")))
print("a^2 a^-3 a ->", format_word(parse_word("a^2 a^-3 a")), "(the empty word prints as 1)")

print("\ncyclic reduction splits off the conjugator:")
core, conj = cyclically_reduce(parse_word("a b b a^-1"))
print("a b b a^-1  =  u c u^-1  with c =", format_word(core), " u =", format_word(conj))

print("\n== the presentation format ==")
text = """# Baumslag-Solitar group BS(2,3)
gens a t
rel t^-1 a^2 t = a^3
"""
bs = parse(text, name="BS(2,3)")
print("parsed", bs)
print("canonical serialization (the `u = v` sugar becomes u v^-1):")
print(serialize(bs))

print("\n== Tietze simplification ==")
p = parse("gens a b c\nrel a b^-1\nrel c")
print("before:", serialize(p).replace("\n", " | "))
q = tietze_simplify(p)
print("after: ", serialize(q).replace("\n", " | "))
print("(generators isolated by a relator are substituted away; relators that")
print(" reduce to 1 are deleted; the scan order is deterministic)")
