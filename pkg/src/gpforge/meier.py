"""Meier's self-square group machinery.

B = BS(2,3), its rank-2 free subgroup F = <t, [a, t^-1 a t]>, the amalgam
T of two copies of B identified over F by switching the generator pairs,
the non-Hopfian endomorphism phi (a -> a^2, t -> t), coordinate evaluation
for the subgroup of the infinite power T^N generated by the diagonals and
the staircase element (1, a, a^2, ...), and a budgeted probe for the
double-coset witnesses behind |F \\ B / F| = infinity.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterator, List, Tuple

from .combinators import GroupExpr, MEIER_GAMMA, MEIER_T, amalgamated_product, atom
from .errors import AlphabetMismatchError, ConstructionIntegrityError
from .presentations import Presentation, PresentationMorphism, parse
from .rewriting import bs_equal, bs_reduce
from .words import Alphabet, GeneratorSymbol, Word, commutator, parse_word, substitute, word

BS23_TEXT = "gens a t\nrel t^-1 a^2 t = a^3"

# Statuses reported by the double-coset probe.
STATUS_IN_F = "in-F"
STATUS_UNKNOWN = "confirmed-in-preimage-unknown-membership"
STATUS_WITNESS = "confirmed-witness"
STATUS_EXHAUSTED = "exhausted"


@dataclass(frozen=True)
class MeierData:
    """The verified ingredients of the construction."""

    B: Presentation
    F_generators: Tuple[Word, Word]  # (t, c) with c = [a, t^-1 a t]
    T: Presentation
    T_expr: GroupExpr
    phi: PresentationMorphism  # a -> a^2, t -> t, relator obligation verified


@lru_cache(maxsize=1)
def _bs_presentation() -> Presentation:
    return parse(BS23_TEXT, name="BS(2,3)")


def f_generators(p: Presentation) -> Tuple[Word, Word]:
    a = word(p.alphabet.symbol("a"))
    t = word(p.alphabet.symbol("t"))
    return t, commutator(a, (~t) * a * t)


@lru_cache(maxsize=1)
def build_meier() -> MeierData:
    """Construct and verify everything; failure here is a build bug.

    Verified at build time:
      * phi kills the defining relator (its image rewrites to 1),
      * phi is non-injective on F: phi(c) = 1 while c has a nonempty
        pinch-free Britton form,
      * phi(F) = <t>: phi(t) = t and phi(c) = 1,
    which justifies tagging the amalgam node with the many-double-cosets
    assertion consumed by the inference engine.
    """
    b = _bs_presentation()
    a_sym, t_sym = b.alphabet.symbol("a"), b.alphabet.symbol("t")
    t_w, c_w = f_generators(b)

    phi_images: Dict[GeneratorSymbol, Word] = {a_sym: word((a_sym, 2)), t_sym: t_w}
    phi = PresentationMorphism(b, b, phi_images)
    try:
        phi = phi.verify(lambda img: not bs_reduce(2, 3, img))
    except Exception as exc:  # pragma: no cover - should be impossible
        raise ConstructionIntegrityError(f"phi relator obligation failed: {exc}") from exc

    if bs_reduce(2, 3, substitute(c_w, phi_images)):
        raise ConstructionIntegrityError("phi(c) did not rewrite to 1")
    if not bs_reduce(2, 3, c_w):
        raise ConstructionIntegrityError("c unexpectedly trivial in BS(2,3)")
    if bs_reduce(2, 3, substitute(t_w, phi_images)) != t_w:
        raise ConstructionIntegrityError("phi(t) != t")

    b_copy = _bs_presentation()
    tbar_w, cbar_w = f_generators(b_copy)
    # Identifications switching the pairs: t = cbar, c = tbar.
    t_node = amalgamated_product(
        atom(b, facts=(("TorsionFree", None),), name="B"),
        atom(b_copy, facts=(("TorsionFree", None),), name="B-copy"),
        pairs=((t_w, cbar_w), (c_w, tbar_w)),
        edge_amenable=False,
        doublecoset_at_least_3=True,
        proper_edge=True,
        edges_legitimate=True,
        _kind=MEIER_T,
    )
    return MeierData(B=b, F_generators=(t_w, c_w), T=t_node.realized, T_expr=t_node, phi=phi)


def meier_t_expr() -> GroupExpr:
    return build_meier().T_expr


def meier_gamma_expr() -> GroupExpr:
    """The four-generated subgroup of T^N as a construction node.

    Element equality in the infinite power is not decided; the node exists
    for coordinate evaluation and for the inference engine, which consumes
    the self-square and first-coordinate-projection tags.
    """
    data = build_meier()
    gamma_p = Presentation(
        Alphabet(("A", "Abar", "Tt", "D")), (), name="meier-gamma"
    )
    return GroupExpr(
        MEIER_GAMMA,
        (data.T_expr,),
        {
            "iso_to_self_times_self": True,
            "surjects_onto_child": True,
            "torsion_free": True,
        },
        gamma_p,
    )


def phi_apply(w: Word) -> Word:
    """BS(2,3)-normal form of phi(w) for w over {a, t}."""
    b = _bs_presentation()
    a_sym, t_sym = b.alphabet.symbol("a"), b.alphabet.symbol("t")
    for sym, _ in w.letters:
        if sym not in (a_sym, t_sym):
            raise AlphabetMismatchError(f"phi is defined on {{a, t}}, got {sym.name!r}")
    return bs_reduce(2, 3, substitute(w, {a_sym: word((a_sym, 2)), t_sym: word(t_sym)}))


@dataclass(frozen=True)
class MeierElement:
    """A word over the four generators A, Abar, Tt (diagonals) and D, the
    staircase element whose i-th coordinate is a^i."""

    word: Word

    ALPHABET = Alphabet(("A", "Abar", "Tt", "D"))

    def __post_init__(self):
        self.ALPHABET.check_word(self.word)


def meier_element(text: str) -> MeierElement:
    return MeierElement(parse_word(text, MeierElement.ALPHABET))


def meier_eval(e: MeierElement, index: int) -> Word:
    """Coordinate evaluation into T's alphabet, freely reduced.

    A, Abar, Tt evaluate to a, a_2, t at every index; D evaluates to a^index.
    Full T-equality is not decided, only free reduction is applied.
    """
    if index < 0:
        raise ValueError("coordinate index must be >= 0")
    t_alpha = build_meier().T.alphabet
    a = t_alpha.symbol("a")
    abar = t_alpha.symbol("a_2")
    t = t_alpha.symbol("t")
    mapping = {
        MeierElement.ALPHABET.symbol("A"): word(a),
        MeierElement.ALPHABET.symbol("Abar"): word(abar),
        MeierElement.ALPHABET.symbol("Tt"): word(t),
        MeierElement.ALPHABET.symbol("D"): word((a, index)) if index else Word(),
    }
    return substitute(e.word, mapping)


# ---------------------------------------------------------------------------
# Double-coset probe.
# ---------------------------------------------------------------------------


def _reduced_words(symbols: List[Tuple[GeneratorSymbol, int]], max_len: int) -> Iterator[Word]:
    """Freely reduced words over +-1 letters, lazily, in length-lex order."""

    def of_length(length: int, prefix: List[Tuple[GeneratorSymbol, int]]) -> Iterator[Word]:
        if len(prefix) == length:
            yield Word(prefix)
            return
        for sym, eps in symbols:
            if prefix and prefix[-1][0] == sym and prefix[-1][1] == -eps:
                continue
            prefix.append((sym, eps))
            yield from of_length(length, prefix)
            prefix.pop()

    for length in range(1, max_len + 1):
        yield from of_length(length, [])


def _is_t_power(nf: Word, t_sym: GeneratorSymbol) -> bool:
    if not nf:
        return True
    return len(nf.letters) == 1 and nf.letters[0][0] == t_sym


def double_coset_probe(
    max_len: int,
    budget: int,
    *,
    f_word_max_len: int = 6,
) -> List[Tuple[Word, str]]:
    """Budgeted search for elements of phi^-1(F) and their F-membership.

    Enumerates freely reduced words x over {a, t} with |x| <= max_len in
    length-lexicographic order and keeps those whose image phi(x) has
    Britton normal form t^k (certainly in <t> <= F).  For each kept x the
    probe enumerates freely reduced words in the free generators {t, c} of
    F, comparing them to x in BS(2,3), spending at most `budget`
    comparisons per candidate:

      * a match certifies x in F              -> status "in-F"
      * full enumeration up to the F-length cap, no match
                                              -> "confirmed-in-preimage-unknown-membership"
      * budget exhausted mid-enumeration      -> "exhausted"

    "confirmed-witness" is reserved for a certified non-membership
    backend; no such certificate is available here, so the status is never
    emitted by this probe.
    """
    if max_len <= 0 or budget <= 0:
        raise ValueError("bounds must be positive")
    b = _bs_presentation()
    a_sym, t_sym = b.alphabet.symbol("a"), b.alphabet.symbol("t")
    t_w, c_w = f_generators(b)

    results: List[Tuple[Word, str]] = []
    letter_order = [(a_sym, 1), (a_sym, -1), (t_sym, 1), (t_sym, -1)]

    # Free generators of F for the membership enumeration.
    f_syms = (GeneratorSymbol("ft"), GeneratorSymbol("fc"))
    f_images = {f_syms[0]: t_w, f_syms[1]: c_w}
    f_letters = [(f_syms[0], 1), (f_syms[0], -1), (f_syms[1], 1), (f_syms[1], -1)]

    for x in _reduced_words(letter_order, max_len):
        nf = bs_reduce(2, 3, substitute(x, {a_sym: word((a_sym, 2)), t_sym: word(t_sym)}))
        if not _is_t_power(nf, t_sym):
            continue
        # Elements equal to a t-power (k = 0 included) lie in <t> <= F.
        if _is_t_power(bs_reduce(2, 3, x), t_sym):
            results.append((x, STATUS_IN_F))
            continue
        status = STATUS_UNKNOWN
        spent = 0
        ran_out = False
        for f_word in _reduced_words(f_letters, f_word_max_len):
            if spent >= budget:
                ran_out = True
                break
            spent += 1
            candidate = substitute(f_word, f_images)
            if bs_equal(2, 3, candidate, x):
                status = STATUS_IN_F
                break
        if status != STATUS_IN_F and ran_out:
            status = STATUS_EXHAUSTED
        results.append((x, status))
    return results


def verified_phi_facts() -> Dict[str, bool]:
    """The concrete identities backing the infinite-double-coset assertion."""
    b = _bs_presentation()
    t_w, c_w = f_generators(b)
    return {
        "phi(t) = t": phi_apply(t_w) == t_w,
        "phi(c) = 1": not phi_apply(c_w),
        "c != 1 (pinch-free Britton form)": bool(bs_reduce(2, 3, c_w)),
    }
