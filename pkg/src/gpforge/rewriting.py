"""Word-problem engines.

* Britton pinch elimination for HNN extensions of free base groups with
  cyclic edge subgroups (covers every Baumslag-Solitar group).
* Free-group triviality.
* Exhaustive search for finite symmetric-group quotients, producing
  re-checkable nontriviality certificates.

Only cyclic edge subgroups are supported: membership of a base word in
<u> is decidable by exact power comparison, which is all the toolkit
needs.  Pinch replacement is leftmost-innermost (a stack pass), so each
replacement removes one stable-letter pair and the procedure terminates.
General edge subgroups would need a membership oracle interface, and
amalgam normal forms are deliberately absent: nothing downstream consumes
them (amalgam facts are handled at the inference-rule level).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .errors import AlphabetMismatchError, UnsupportedEdgeError
from .presentations import Presentation
from .words import Alphabet, GeneratorSymbol, Word, cyclically_reduce, word


@dataclass(frozen=True)
class HnnRewriteSystem:
    """HNN data over a free base: t^-1 u^k t = v^k for the edge words u, v."""

    base: Alphabet
    stable: GeneratorSymbol
    left_edge: Word   # u: subgroup conjugated by t^-1 ... t
    right_edge: Word  # v: subgroup conjugated by t ... t^-1

    def __post_init__(self):
        if not self.left_edge or not self.right_edge:
            raise UnsupportedEdgeError("edge words must be nontrivial")
        if self.stable in self.base:
            raise UnsupportedEdgeError("stable letter must not be a base generator")
        self.base.check_word(self.left_edge)
        self.base.check_word(self.right_edge)


def bs_system(m: int, n: int) -> HnnRewriteSystem:
    """The Baumslag-Solitar group BS(m, n) = <a, t | t^-1 a^m t = a^n>."""
    if m == 0 or n == 0:
        raise UnsupportedEdgeError("BS parameters must be nonzero")
    a = GeneratorSymbol("a")
    return HnnRewriteSystem(
        base=Alphabet((a,)),
        stable=GeneratorSymbol("t"),
        left_edge=word((a, m)),
        right_edge=word((a, n)),
    )


def _edge_power(edge: Word, w: Word) -> Optional[int]:
    """The integer k with w = edge^k in the free base, or None."""
    if not w:
        return 0
    core, conj = cyclically_reduce(edge)
    inner = (~conj) * w * conj
    if not inner:
        return 0
    total = len(inner)
    unit = len(core)
    if unit == 0 or total % unit:
        return None
    k = total // unit
    if core ** k == inner:
        return k
    if core ** (-k) == inner:
        return -k
    return None


def britton_normal_form(sys: HnnRewriteSystem, w: Word) -> Word:
    """Eliminate every pinch t^-1 u t (u in <left_edge>) and t v t^-1
    (v in <right_edge>), leftmost-innermost.

    The result is pinch-free; it is the identity iff it is the empty word,
    and a nonempty pinch-free word containing the stable letter is
    certified nontrivial (Britton's lemma).
    """
    t = sys.stable
    for sym, _ in w.letters:
        if sym != t and sym not in sys.base:
            raise AlphabetMismatchError(f"symbol {sym.name!r} is neither base nor stable letter")

    # Stack of tokens: ('t', +-1) or ('w', Word over the base).
    stack: List[Tuple[str, object]] = []

    def push_base(u: Word) -> None:
        if not u:
            return
        if stack and stack[-1][0] == "w":
            stack[-1] = ("w", stack[-1][1] * u)
            if not stack[-1][1]:
                stack.pop()
        else:
            stack.append(("w", u))

    def push_stable(eps: int) -> None:
        # Look for ... t^-eps [base] t^eps with the base segment in the
        # matching edge subgroup.
        base_seg = Word()
        depth = None
        if stack and stack[-1][0] == "w":
            base_seg = stack[-1][1]
            if len(stack) >= 2 and stack[-2][0] == "t":
                depth = 2
        elif stack and stack[-1][0] == "t":
            depth = 1
        if depth is not None and stack[-depth][1] == -eps:
            edge_in = sys.left_edge if eps == 1 else sys.right_edge
            edge_out = sys.right_edge if eps == 1 else sys.left_edge
            k = _edge_power(edge_in, base_seg)
            if k is not None:
                for _ in range(depth):
                    stack.pop()
                push_base(edge_out ** k)
                return
        stack.append(("t", eps))

    for sym, exp in w.letters:
        if sym == t:
            step = 1 if exp > 0 else -1
            for _ in range(abs(exp)):
                push_stable(step)
        else:
            push_base(word((sym, exp)))

    out: List[Tuple[GeneratorSymbol, int]] = []
    for tag, val in stack:
        if tag == "t":
            out.append((t, val))
        else:
            out.extend(val.letters)
    return Word(out)


def is_pinch_free(sys: HnnRewriteSystem, w: Word) -> bool:
    """Single-scan check that no pinch remains (verification for tests)."""
    return britton_normal_form(sys, w) == w


def bs_reduce(m: int, n: int, w: Word) -> Word:
    """Britton canonical form in BS(m, n); base segments are a-powers.

    Equality test: u = v in BS(m, n) iff bs_reduce(m, n, u * ~v) is empty.
    """
    return britton_normal_form(bs_system(m, n), w)


def bs_equal(m: int, n: int, u: Word, v: Word) -> bool:
    return not bs_reduce(m, n, u * ~v)


def free_triviality(w: Word) -> bool:
    """True iff the word freely reduces to the identity."""
    return not Word(w.letters)


# ---------------------------------------------------------------------------
# Finite symmetric-group quotients.
# ---------------------------------------------------------------------------

Perm = Tuple[int, ...]


def _identity(n: int) -> Perm:
    return tuple(range(n))


def _compose(p: Perm, q: Perm) -> Perm:
    """(p * q)(x) = p(q(x)): apply q first."""
    return tuple(p[q[i]] for i in range(len(p)))


def _inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    return tuple(inv)


def _power(p: Perm, k: int) -> Perm:
    n = len(p)
    if k < 0:
        p, k = _inverse(p), -k
    result = _identity(n)
    while k:
        if k & 1:
            result = _compose(result, p)
        p = _compose(p, p)
        k >>= 1
    return result


def evaluate_word(w: Word, images: Dict[GeneratorSymbol, Perm], degree: int) -> Perm:
    out = _identity(degree)
    for sym, exp in w.letters:
        out = _compose(out, _power(images[sym], exp))
    return out


def permutation_cycles(p: Perm) -> str:
    """One-line cycle notation, 1-based, fixed points omitted; identity '()'."""
    seen = [False] * len(p)
    parts = []
    for i in range(len(p)):
        if seen[i] or p[i] == i:
            seen[i] = True
            continue
        cyc = [i]
        seen[i] = True
        j = p[i]
        while j != i:
            cyc.append(j)
            seen[j] = True
            j = p[j]
        parts.append("(" + " ".join(str(x + 1) for x in cyc) + ")")
    return "".join(parts) if parts else "()"


def parse_cycles(text: str, degree: int) -> Perm:
    """Inverse of permutation_cycles for certificate re-validation."""
    perm = list(range(degree))
    text = text.strip()
    if text == "()":
        return tuple(perm)
    for chunk in text.replace(")", ")|").split("|"):
        chunk = chunk.strip()
        if not chunk:
            continue
        pts = [int(x) - 1 for x in chunk.strip("()").split()]
        for a, b in zip(pts, pts[1:] + pts[:1]):
            perm[a] = b
    return tuple(perm)


@dataclass(frozen=True)
class Homomorphism:
    """Generator -> permutation table defining a quotient in S_degree."""

    degree: int
    images: Dict[GeneratorSymbol, Perm]

    def evaluate(self, w: Word) -> Perm:
        return evaluate_word(w, self.images, self.degree)


@dataclass(frozen=True)
class TrivialityCertificate:
    """Independently re-checkable evidence about an element or presentation.

    Kinds: FreeReduction (word reduces to 1), BrittonNormalForm (pinch-free
    nonempty form certifies != 1), FiniteQuotient (homomorphism separating
    the target from 1), TietzeCollapse (the presentation simplifies to the
    empty presentation).
    """

    kind: str
    presentation: Optional[Presentation] = None
    target: Optional[Word] = None
    hom: Optional[Homomorphism] = None
    normal_form: Optional[Word] = None

    def revalidate(self) -> bool:
        if self.kind == "FreeReduction":
            return self.target is not None and free_triviality(self.target)
        if self.kind == "BrittonNormalForm":
            return self.normal_form is not None and bool(self.normal_form)
        if self.kind == "FiniteQuotient":
            if self.hom is None or self.presentation is None or self.target is None:
                return False
            ident = _identity(self.hom.degree)
            for rel in self.presentation.relators:
                if self.hom.evaluate(rel) != ident:
                    return False
            return self.hom.evaluate(self.target) != ident
        if self.kind == "TietzeCollapse":
            from .presentations import tietze_simplify

            if self.presentation is None:
                return False
            simplified = tietze_simplify(self.presentation)
            return len(simplified.alphabet) == 0 and not simplified.relators
        return False


def _permutations_lex(n: int) -> List[Perm]:
    return [tuple(p) for p in itertools.permutations(range(n))]


def finite_quotient_search(
    p: Presentation,
    degree_max: int,
    target: Optional[Word] = None,
):
    """Exhaustive search for homomorphisms into S_degree, degree <= degree_max.

    Generator assignments are enumerated in a fixed order (generators in
    alphabet order, permutations lexicographic, degrees ascending), pruned
    on prefixes: a relator is checked as soon as all its symbols are
    assigned, which never changes the surviving set.

    Without `target`: the list of all satisfying Homomorphisms, in
    enumeration order.  With `target`: a FiniteQuotient certificate for the
    first homomorphism sending the target word to a non-identity
    permutation, or None if none exists within the bound.
    """
    if degree_max > 6:
        raise ValueError("degree_max must be <= 6")
    gens = list(p.alphabet.symbols)
    # Relator checkable at depth k once its symbols lie in gens[:k].
    checkable_at: List[List[Word]] = [[] for _ in range(len(gens) + 1)]
    for rel in p.relators:
        syms = rel.symbols()
        depth = 0
        for k, g in enumerate(gens, start=1):
            if g in syms:
                depth = k
        checkable_at[depth].append(rel)

    found: List[Homomorphism] = []
    for degree in range(1, degree_max + 1):
        perms = _permutations_lex(degree)
        ident = _identity(degree)
        images: Dict[GeneratorSymbol, Perm] = {}

        def assign(k: int):
            if k == len(gens):
                hom = Homomorphism(degree, dict(images))
                if target is None:
                    found.append(hom)
                    return None
                if hom.evaluate(target) != ident:
                    return TrivialityCertificate(
                        kind="FiniteQuotient", presentation=p, target=target, hom=hom
                    )
                return None
            for perm in perms:
                images[gens[k]] = perm
                ok = all(
                    evaluate_word(rel, images, degree) == ident
                    for rel in checkable_at[k + 1]
                )
                if ok:
                    result = assign(k + 1)
                    if result is not None:
                        return result
            images.pop(gens[k], None)
            return None

        if not gens:
            # No generators: the only (empty) homomorphism exists per degree.
            hom = Homomorphism(degree, {})
            if target is None:
                found.append(hom)
            continue
        result = assign(0)
        if result is not None:
            return result
    if target is None:
        return found
    return None
