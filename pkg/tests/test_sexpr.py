import pytest

from gpforge.combinators import atom, direct_product, mu_stage
from gpforge.errors import ParseError
from gpforge.homology import AbelianGroup, abelianization
from gpforge.inference import derive
from gpforge.presentations import presentation, serialize
from gpforge.reductions import free_source, gamma_w, pi_w
from gpforge.sexpr import parse_expr, serialize_expr
from gpforge.words import parse_word


def test_atom_inline_presentation():
    expr = parse_expr('(atom "G" :pres "gens a b\\nrel a^2" :facts (amenable (fin-gen 2)))')
    assert expr.kind == "atom"
    assert serialize(expr.realized) == "gens a b\nrel a^2"
    assert expr.payload["facts"] == (("Amenable", None), ("FinGen", 2))


def test_atom_file_reference(tmp_path):
    path = tmp_path / "p.grp"
    path.write_text("gens a\nrel a^3\n", encoding="utf-8")
    expr = parse_expr(f'(atom "C3" :file "p.grp")', base_dir=str(tmp_path))
    assert abelianization(expr.realized) == AbelianGroup(0, (3,))


def test_structural_forms():
    free = parse_expr('(free-product (atom "A" :pres "gens a") (atom "B" :pres "gens b"))')
    assert serialize(free.realized) == "gens a b"
    direct = parse_expr('(direct (atom "A" :pres "gens a") (atom "B" :pres "gens b"))')
    assert serialize(direct.realized) == "gens a b\nrel a^-1 b^-1 a b"
    amalgam = parse_expr(
        '(amalgam (atom "A" :pres "gens a\\nrel a^4") (atom "B" :pres "gens b\\nrel b^6")'
        ' :pairs (("a^2" "b^3")))'
    )
    assert serialize(amalgam.realized) == "gens a b\nrel a^4\nrel b^6\nrel a^2 b^-3"
    hnn = parse_expr('(hnn (atom "Z" :pres "gens a") :stable "t" :assoc (("a^2" "a^3")))')
    assert serialize(hnn.realized) == "gens a t\nrel t^-1 a^2 t a^-3"
    mit = parse_expr('(mitosis (atom "F1" :pres "gens g"))')
    assert len(mit.realized.alphabet) == 3
    mu = parse_expr('(mu (atom "F1" :pres "gens g") :k 2)')
    assert abelianization(mu.realized) == AbelianGroup(1)


def test_meier_builtin_forms():
    t = parse_expr("(meier-T)")
    assert len(t.realized.alphabet) == 4
    gamma = parse_expr("(meier-gamma)")
    assert gamma.kind == "meier-gamma"


def test_witness_forms_with_oracles():
    lam = parse_expr('(lambda-w (atom "F2" :pres "gens a b") "a a^-1")')
    assert lam.kind == "atom"  # trivial branch collapses
    gam = parse_expr('(gamma-w (atom "F2" :pres "gens a b") "a^-1 b^-1 a b")')
    assert gam.kind == "gamma-w"
    wit = parse_expr(
        '(witness-w (atom "F2" :pres "gens x_1 x_2" :facts (torsion-free))'
        ' (atom "L" :pres "gens a b") "a b")'
    )
    assert wit.kind == "witness-w"
    pi = parse_expr('(pi-w (atom "L" :pres "gens a b") "a" :dim 4)')
    assert pi.kind == "pi-w"
    delta = parse_expr('(delta-w (atom "L" :pres "gens a b") "a" :dim 2)')
    assert delta.kind == "delta-w"
    bs = parse_expr(
        '(lambda-w (atom "B" :pres "gens a t\\nrel t^-1 a^2 t a^-3") "t^-1 a^2 t a^-3"'
        ' :oracle "bs:2,3")'
    )
    assert bs.kind == "atom"  # the relator word is trivial in BS(2,3)


def test_round_trip_preserves_derivations():
    exprs = [
        mu_stage(atom(presentation(["g"]), facts=(("FinGen", 1),)), 2),
        gamma_w(free_source(), parse_word("a b")).expr,
        pi_w(free_source(), parse_word("a"), 4).expr,
        direct_product(
            atom(presentation(["p", "q"]), facts=(("ThompsonT", None),)),
            atom(presentation(["x", "y"]), facts=(("HypManifoldGroup", 3),)),
        ),
        parse_expr("(meier-gamma)"),
    ]
    for expr in exprs:
        text = serialize_expr(expr)
        again = parse_expr(text)
        assert serialize(again.realized) == serialize(expr.realized)
        assert serialize_expr(again) == text
        d1 = derive(expr, max_degree=6)
        d2 = derive(again, max_degree=6)
        assert d1.facts == d2.facts


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_expr("(")
    with pytest.raises(ParseError):
        parse_expr('(atom "x")')
    with pytest.raises(ParseError):
        parse_expr('(unknown-form (atom "x" :pres "gens a"))')
    with pytest.raises(ParseError):
        parse_expr('(mu (atom "x" :pres "gens a"))')
    with pytest.raises(ParseError):
        parse_expr('(atom "x" :pres "gens a") (atom "y" :pres "gens b")')


def test_comments_and_strings():
    expr = parse_expr('; a comment line\n(atom "G" :pres "gens a") ; trailing')
    assert expr.kind == "atom"


def test_bac_hnn_round_trip_keeps_chain_tag():
    from gpforge.combinators import bac_hnn
    from gpforge.presentations import PresentationMorphism
    from gpforge.words import word

    base = atom(presentation(["x", "y"]), facts=(("MuEmbedsBack", None),), name="U")
    x, y = base.realized.alphabet.symbols
    ident = PresentationMorphism(base.realized, base.realized, {x: word(x), y: word(y)})
    expr = bac_hnn(base, ident.verify(lambda w: not w))
    text = serialize_expr(expr)
    assert ":ascending" in text and ":bac-chain" in text
    again = parse_expr(text)
    d1, d2 = derive(expr), derive(again)
    assert d1.facts == d2.facts
    assert d2.has(again, "BoundedlyAcyclic")
