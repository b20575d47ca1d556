import random
from collections import deque

import pytest

from gpforge.errors import AlphabetMismatchError, UnsupportedEdgeError
from gpforge.presentations import parse, presentation
from gpforge.rewriting import (
    HnnRewriteSystem,
    TrivialityCertificate,
    britton_normal_form,
    bs_equal,
    bs_reduce,
    bs_system,
    finite_quotient_search,
    free_triviality,
    is_pinch_free,
    parse_cycles,
    permutation_cycles,
)
from gpforge.words import Alphabet, GeneratorSymbol, Word, commutator, parse_word, word

A = GeneratorSymbol("a")
T = GeneratorSymbol("t")


def test_britton_rewrites_defining_relation():
    assert bs_reduce(2, 3, parse_word("t^-1 a^2 t")) == parse_word("a^3")
    assert bs_reduce(2, 3, parse_word("t a^3 t^-1")) == parse_word("a^2")


def test_britton_commutator_is_pinch_free_hence_nontrivial():
    c = commutator(word("a"), ~word("t") * word("a") * word("t"))
    nf = bs_reduce(2, 3, c)
    assert nf == c  # no pinch applies: a is in neither <a^2> nor <a^3>
    assert nf  # nonempty pinch-free => nontrivial
    assert is_pinch_free(bs_system(2, 3), nf)
    cert = TrivialityCertificate(kind="BrittonNormalForm", normal_form=nf)
    assert cert.revalidate()


def test_britton_empty_word():
    assert bs_reduce(2, 3, Word()) == Word()


def oracle_bfs_rewrite_to_identity(start: str, max_depth: int) -> bool:
    """Independent string rewriting: apply t^-1 a^2 t = a^3 (both signs,
    both directions) anywhere plus free cancellation; BFS to the empty
    string."""
    rules = [("Taat", "aaa"), ("aaa", "Taat"), ("TAAt", "AAA"), ("AAA", "TAAt")]
    inverse = {"a": "A", "A": "a", "t": "T", "T": "t"}

    def cancel(s: str) -> str:
        out = []
        for ch in s:
            if out and out[-1] == inverse[ch]:
                out.pop()
            else:
                out.append(ch)
        return "".join(out)

    seen = {cancel(start)}
    frontier = deque([(cancel(start), 0)])
    while frontier:
        s, depth = frontier.popleft()
        if s == "":
            return True
        if depth == max_depth or len(s) > 24:
            continue
        for lhs, rhs in rules:
            i = s.find(lhs)
            while i != -1:
                nxt = cancel(s[:i] + rhs + s[i + len(lhs):])
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append((nxt, depth + 1))
                i = s.find(lhs, i + 1)
    return False


def test_phi_relator_obligation_matches_bfs_oracle():
    w = parse_word("t^-1 a^4 t a^-6")
    assert bs_reduce(2, 3, w) == Word()
    assert oracle_bfs_rewrite_to_identity("TaaaatAAAAAA", max_depth=4)


def test_pinch_free_words_stay_put():
    assert bs_reduce(2, 3, parse_word("t^-1 a t")) == parse_word("t^-1 a t")
    assert bs_reduce(2, 3, parse_word("a^2 a^-2")) == Word()


def test_britton_rejects_foreign_symbols_and_bad_edges():
    with pytest.raises(AlphabetMismatchError):
        bs_reduce(2, 3, parse_word("b"))
    with pytest.raises(UnsupportedEdgeError):
        HnnRewriteSystem(Alphabet(["a"]), GeneratorSymbol("t"), Word(), word("a"))
    with pytest.raises(UnsupportedEdgeError):
        bs_system(0, 3)


def test_nested_pinches_resolve():
    # t^-2 a^4 t^2 = t^-1 a^6 t = a^9.
    assert bs_reduce(2, 3, parse_word("t^-2 a^4 t^2")) == parse_word("a^9")


def random_bs_word(rng, max_len=8):
    letters = [
        (rng.choice([A, T]), rng.choice([-1, 1])) for _ in range(rng.randint(0, max_len))
    ]
    return Word(letters)


def test_bs_equality_is_an_equivalence_on_random_words():
    rng = random.Random(515)
    words = [random_bs_word(rng) for _ in range(60)]
    for w in words:
        assert bs_equal(2, 3, w, w)
    pairs = [(rng.choice(words), rng.choice(words)) for _ in range(1000)]
    for u, v in pairs:
        assert bs_equal(2, 3, u, v) == bs_equal(2, 3, v, u)
    # Transitivity on sampled triples where the first two relations hold.
    for u in words[:20]:
        for v in words[:20]:
            if not bs_equal(2, 3, u, v):
                continue
            for x in words[:20]:
                if bs_equal(2, 3, v, x):
                    assert bs_equal(2, 3, u, x)


def test_britton_output_is_always_pinch_free():
    rng = random.Random(77)
    sys23 = bs_system(2, 3)
    for _ in range(300):
        nf = britton_normal_form(sys23, random_bs_word(rng, max_len=10))
        assert is_pinch_free(sys23, nf)


def test_general_cyclic_edge_words():
    # <a, b, t | t^-1 [a,b] t = b^2>: pinch over a non-power edge word.
    sys = HnnRewriteSystem(
        Alphabet(["a", "b"]),
        GeneratorSymbol("t"),
        commutator(word("a"), word("b")),
        word(("b", 2)),
    )
    w = ~word("t") * commutator(word("a"), word("b")) ** 2 * word("t")
    assert britton_normal_form(sys, w) == word(("b", 4))


def test_free_triviality():
    assert free_triviality(parse_word("a b b^-1 a^-1"))
    assert not free_triviality(commutator(word("a"), word("b")))
    rng = random.Random(1)
    for _ in range(200):
        w = random_bs_word(rng)
        assert free_triviality(w * ~w)


def test_finite_quotient_search_cyclic_group():
    p = presentation(["g"], ["g^3"])
    cert = finite_quotient_search(p, 5, target=parse_word("g", p.alphabet))
    assert cert is not None and cert.hom.degree == 3
    g = p.alphabet.symbol("g")
    assert permutation_cycles(cert.hom.images[g]) == "(1 2 3)"
    assert cert.revalidate()


def test_finite_quotient_search_bs23_needs_degree_5():
    bs = parse("gens a t\nrel t^-1 a^2 t = a^3")
    target = parse_word("a", bs.alphabet)
    assert finite_quotient_search(bs, 4, target=target) is None
    cert = finite_quotient_search(bs, 5, target=target)
    assert cert is not None and cert.hom.degree == 5
    a, t = bs.alphabet.symbol("a"), bs.alphabet.symbol("t")
    assert permutation_cycles(cert.hom.images[a]) == "(1 2 3 4 5)"
    assert permutation_cycles(cert.hom.images[t]) == "(2 5)(3 4)"
    assert cert.revalidate()


def test_finite_quotient_search_trivial_presentation():
    p = presentation(["g"], ["g"])
    assert finite_quotient_search(p, 5, target=parse_word("g", p.alphabet)) is None


def test_finite_quotient_search_collects_all_homs():
    p = presentation(["g"], ["g^2"])
    homs = finite_quotient_search(p, 3)
    # Degree 1: identity; degree 2: id and the transposition; degree 3:
    # id plus the three transpositions.
    assert [h.degree for h in homs] == [1, 2, 2, 3, 3, 3, 3]
    ident3 = tuple(range(3))
    for h in homs:
        rel = p.relators[0]
        assert h.evaluate(rel) == tuple(range(h.degree))


def test_finite_quotient_degree_cap():
    with pytest.raises(ValueError):
        finite_quotient_search(presentation(["g"]), 7)


def test_quotient_separation_is_consistent_with_britton():
    bs = parse("gens a t\nrel t^-1 a^2 t = a^3")
    rng = random.Random(23)
    homs = finite_quotient_search(bs, 4)
    for _ in range(60):
        u, v = random_bs_word(rng, 6), random_bs_word(rng, 6)
        separated = any(h.evaluate(u) != h.evaluate(v) for h in homs)
        if separated:
            assert not bs_equal(2, 3, u, v)


def test_cycle_notation_round_trip():
    perm = (1, 0, 3, 2, 4)
    text = permutation_cycles(perm)
    assert text == "(1 2)(3 4)"
    assert parse_cycles(text, 5) == perm
    assert permutation_cycles(tuple(range(4))) == "()"
    assert parse_cycles("()", 4) == tuple(range(4))


def test_all_certificate_kinds_revalidate():
    from gpforge.presentations import parse

    free_cert = TrivialityCertificate(kind="FreeReduction", target=parse_word("a a^-1"))
    assert free_cert.revalidate()
    assert not TrivialityCertificate(kind="FreeReduction", target=parse_word("a")).revalidate()
    collapse = TrivialityCertificate(
        kind="TietzeCollapse", presentation=parse("gens a b\nrel a\nrel b")
    )
    assert collapse.revalidate()
    stays = TrivialityCertificate(
        kind="TietzeCollapse", presentation=parse("gens a t\nrel t^-1 a^2 t a^-3")
    )
    assert not stays.revalidate()
    assert not TrivialityCertificate(kind="Unknown").revalidate()


def test_britton_equality_agrees_with_affine_representation():
    """Independent one-sided oracle: BS(2,3) maps onto a subgroup of the
    affine group of the rationals by a -> x+1 and t -> (2/3)x (the defining
    relation holds there).  The representation is not faithful, but
    whenever two affine images differ the group elements differ, so any
    Britton-certified equality must agree."""
    from fractions import Fraction

    def affine(w):
        # Compose left-to-right with the rightmost letter applied first,
        # matching the permutation-evaluation convention.
        slope, offset = Fraction(1), Fraction(0)
        for sym, exp in w.letters:
            if sym.name == "a":
                s2, o2 = Fraction(1), Fraction(exp)
            else:
                s2, o2 = Fraction(2, 3) ** exp, Fraction(0)
            # current := current  after  (s2, o2): x -> current(s2 x + o2)
            slope, offset = slope * s2, slope * o2 + offset
        return slope, offset

    relator = parse_word("t^-1 a^2 t a^-3")
    assert affine(relator) == (Fraction(1), Fraction(0))

    rng = random.Random(2718)
    words = [random_bs_word(rng, 8) for _ in range(80)]
    for u in words:
        for v in words[:20]:
            if bs_equal(2, 3, u, v):
                assert affine(u) == affine(v)
            elif affine(u) == affine(v):
                # The representation may collapse distinct elements (it
                # kills the commutator witness); no assertion either way.
                pass
