"""Presentation-level constructors for the group operations the toolkit
supports, each recording a GroupExpr construction-tree node.

Node kinds: Atom, FreeProduct, DirectProduct, Amalgam, Hnn, Mitosis,
MuStage, MeierT, MeierGamma, LambdaW, GammaW, WitnessW, PiW, DeltaW.
The realized presentation of a node always equals re-running its
constructor on the children's realizations, and every build is
deterministic (fresh-name policy: suffix `_2`, `_3`, ... on clashes), so
repeated builds are bit-identical.
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .errors import DegenerateEdgeError, StableLetterError
from .presentations import (
    Presentation,
    PresentationMorphism,
    StagedPresentation,
)
from .words import Alphabet, GeneratorSymbol, Word, commutator, substitute, word

ATOM = "atom"
FREE_PRODUCT = "free-product"
DIRECT_PRODUCT = "direct"
AMALGAM = "amalgam"
HNN = "hnn"
MITOSIS = "mitosis"
MU_STAGE = "mu"
MEIER_T = "meier-T"
MEIER_GAMMA = "meier-gamma"
LAMBDA_W = "lambda-w"
GAMMA_W = "gamma-w"
WITNESS_W = "witness-w"
PI_W = "pi-w"
DELTA_W = "delta-w"

# Node kinds whose realization is a free product of the children.
FREE_PRODUCT_LIKE = {FREE_PRODUCT, GAMMA_W, LAMBDA_W}
# Node kinds whose realization is a direct product of the children.
DIRECT_PRODUCT_LIKE = {DIRECT_PRODUCT, PI_W, DELTA_W}
# Node kinds realizing amalgamated products (children are the factors).
AMALGAM_LIKE = {AMALGAM, MEIER_T, WITNESS_W}


class GroupExpr:
    """A construction-tree node: kind, children, payload, realized form.

    `payload` carries kind-specific data (identification pairs, stage
    index, asserted base facts for atoms, construction-certified tags such
    as `nonelementary` or `edge_amenable`) and is treated as immutable
    after construction.
    """

    __slots__ = ("kind", "children", "payload", "realized")

    def __init__(self, kind: str, children: Sequence["GroupExpr"], payload: dict, realized: Presentation):
        self.kind = kind
        self.children = tuple(children)
        self.payload = payload
        self.realized = realized

    def __repr__(self):
        return f"<GroupExpr {self.kind} gens={len(self.realized.alphabet)} children={len(self.children)}>"

    def walk(self):
        """Pre-order traversal; index order is the node-id order."""
        yield self
        for child in self.children:
            yield from child.walk()

    def node_ids(self) -> Dict["GroupExpr", int]:
        return {node: i for i, node in enumerate(self.walk())}


ExprLike = Union[GroupExpr, Presentation]


def atom(p: Presentation, facts: Iterable = (), name: Optional[str] = None) -> GroupExpr:
    """Leaf node: a presentation plus externally asserted base facts.

    Facts are (predicate, arg) pairs or bare predicate names; they are the
    only place deep external theorems enter the inference engine.
    """
    normalized = []
    for f in facts:
        if isinstance(f, str):
            normalized.append((f, None))
        else:
            pred, arg = f
            normalized.append((pred, arg))
    return GroupExpr(
        ATOM,
        (),
        {"facts": tuple(normalized), "name": name or p.name},
        p,
    )


def _as_expr(x: ExprLike) -> GroupExpr:
    return x if isinstance(x, GroupExpr) else atom(x)


def _fresh_name(base: str, taken: set) -> str:
    if base not in taken:
        return base
    k = 2
    while f"{base}_{k}" in taken:
        k += 1
    return f"{base}_{k}"


def _disjoint_union(p: Presentation, q: Presentation) -> Tuple[Alphabet, Dict[GeneratorSymbol, Word], Tuple[Word, ...]]:
    """Alphabet of p + renamed q, the renaming map for q, and q's relators
    rewritten through it."""
    taken = set(p.alphabet.names)
    renamed: List[GeneratorSymbol] = []
    mapping: Dict[GeneratorSymbol, Word] = {}
    for sym in q.alphabet:
        name = _fresh_name(sym.name, taken)
        taken.add(name)
        new_sym = GeneratorSymbol(name)
        renamed.append(new_sym)
        mapping[sym] = Word(((new_sym, 1),))
    alphabet = Alphabet(tuple(p.alphabet.symbols) + tuple(renamed))
    relators = tuple(substitute(r, mapping) for r in q.relators)
    return alphabet, mapping, relators


def free_product(p: ExprLike, q: ExprLike, *, _kind: str = FREE_PRODUCT, _extra_payload: Optional[dict] = None) -> GroupExpr:
    """Disjoint union of alphabets, concatenated relators, no cross relators.

    Name clashes in the right factor get deterministic `_2`, `_3`, ...
    suffixes.
    """
    pe, qe = _as_expr(p), _as_expr(q)
    alphabet, mapping, q_rels = _disjoint_union(pe.realized, qe.realized)
    realized = Presentation(alphabet, pe.realized.relators + q_rels)
    payload = {"right_renaming": mapping}
    if _extra_payload:
        payload.update(_extra_payload)
    return GroupExpr(_kind, (pe, qe), payload, realized)


def direct_product(p: ExprLike, q: ExprLike, *, _kind: str = DIRECT_PRODUCT, _extra_payload: Optional[dict] = None) -> GroupExpr:
    """Free-product presentation plus commutator relators [x, y] for every
    generator x of p and y of q."""
    pe, qe = _as_expr(p), _as_expr(q)
    alphabet, mapping, q_rels = _disjoint_union(pe.realized, qe.realized)
    commutators = []
    for x in pe.realized.alphabet:
        for y in qe.realized.alphabet:
            commutators.append(commutator(word(x), mapping[y]))
    realized = Presentation(alphabet, pe.realized.relators + q_rels + tuple(commutators))
    payload = {"right_renaming": mapping}
    if _extra_payload:
        payload.update(_extra_payload)
    return GroupExpr(_kind, (pe, qe), payload, realized)


def amalgamated_product(
    p: ExprLike,
    q: ExprLike,
    pairs: Sequence[Tuple[Word, Word]],
    *,
    edge_amenable: bool = False,
    doublecoset_at_least_3: bool = False,
    proper_edge: bool = False,
    edges_legitimate: bool = False,
    _kind: str = AMALGAM,
) -> GroupExpr:
    """Free product with identification relators u_i * v_i^-1.

    Edge-subgroup legitimacy (that the pairs generate isomorphic
    subgroups) is NOT checked; the node records it as an unverified
    obligation unless the caller certifies `edges_legitimate`.  The
    keyword tags are caller assertions consumed by the inference engine.
    """
    pe, qe = _as_expr(p), _as_expr(q)
    for u, v in pairs:
        if not u or not v:
            raise DegenerateEdgeError("amalgam identification words must be nonempty")
    alphabet, mapping, q_rels = _disjoint_union(pe.realized, qe.realized)
    ident = tuple(u * ~substitute(v, mapping) for u, v in pairs)
    realized = Presentation(alphabet, pe.realized.relators + q_rels + ident)
    payload = {
        "right_renaming": mapping,
        "pairs": tuple(pairs),
        "edge_amenable": edge_amenable,
        "doublecoset_at_least_3": doublecoset_at_least_3,
        "proper_edge": proper_edge,
        "edges_legitimate": edges_legitimate,
        "obligations": () if edges_legitimate else ("edge-subgroups-isomorphic",),
    }
    return GroupExpr(_kind, (pe, qe), payload, realized)


def hnn_extension(
    p: ExprLike,
    stable: str,
    assoc: Sequence[Tuple[Word, Word]] = (),
    ascending_domain: Optional[PresentationMorphism] = None,
    *,
    _extra_payload: Optional[dict] = None,
) -> GroupExpr:
    """Adjoin a stable letter t with relators t^-1 * u_i * t * v_i^-1.

    With `ascending_domain` (a self-morphism of p), assoc is derived as
    (x, phi(x)) over all generators and the node is tagged ascending.
    """
    pe = _as_expr(p)
    base = pe.realized
    if stable in base.alphabet:
        raise StableLetterError(f"stable letter {stable!r} clashes with a base generator")
    t = GeneratorSymbol(stable)
    ascending = False
    pending = False
    if ascending_domain is not None:
        phi = ascending_domain
        if phi.source.alphabet != base.alphabet or phi.target.alphabet != base.alphabet:
            raise StableLetterError("ascending domain must be a self-map of the base presentation")
        assoc = tuple((word(x), phi.apply(word(x))) for x in base.alphabet)
        ascending = True
        pending = phi.pending
    for u, v in assoc:
        base.alphabet.check_word(u)
        base.alphabet.check_word(v)
    alphabet = Alphabet(tuple(base.alphabet.symbols) + (t,))
    tw = Word(((t, 1),))
    rels = tuple((~tw) * u * tw * ~v for u, v in assoc)
    realized = Presentation(alphabet, base.relators + rels)
    payload = {
        "stable": t,
        "assoc": tuple(assoc),
        "ascending": ascending,
        "pending": pending,
    }
    if _extra_payload:
        payload.update(_extra_payload)
    return GroupExpr(HNN, (pe,), payload, realized)


def _mitosis_relators(gens: Sequence[GeneratorSymbol], s: GeneratorSymbol, d: GeneratorSymbol) -> List[Word]:
    """Relators d^-1 g d = g s^-1 g s and [g, s^-1 h s] over generator pairs.

    The element-level conditions for the whole subgroup follow from this
    generator schema: the commutation relators make the d-conjugation
    relation multiplicative, so products and inverses inherit both
    conditions (tested against finite quotients in the suite).
    """
    sw, dw = word(s), word(d)
    rels: List[Word] = []
    for g in gens:
        gw = word(g)
        rels.append((~dw) * gw * dw * ~(gw * (~sw) * gw * sw))
    for g in gens:
        gw = word(g)
        for h in gens:
            hw = word(h)
            rels.append(commutator(gw, (~sw) * hw * sw))
    return rels


def standard_mitosis(p: ExprLike, *, s_name: str = "s", d_name: str = "d") -> GroupExpr:
    """Adjoin s, d with the two-step HNN relators of the standard mitosis.

    The node records the quotient morphism onto the free group on the two
    fresh letters (kill the base, fix s and d).
    """
    pe = _as_expr(p)
    base = pe.realized
    taken = set(base.alphabet.names)
    s = GeneratorSymbol(_fresh_name(s_name, taken))
    taken.add(s.name)
    d = GeneratorSymbol(_fresh_name(d_name, taken))
    alphabet = Alphabet(tuple(base.alphabet.symbols) + (s, d))
    rels = base.relators + tuple(_mitosis_relators(base.alphabet.symbols, s, d))
    realized = Presentation(alphabet, rels)
    f2 = Presentation(Alphabet((s, d)), ())
    images = {g: Word() for g in base.alphabet}
    images[s] = word(s)
    images[d] = word(d)
    quotient = PresentationMorphism(realized, f2, images)
    payload = {"s": s, "d": d, "quotient_to_f2": quotient}
    return GroupExpr(MITOSIS, (pe,), payload, realized)


def _mu_stage_presentation(base: Presentation, k: int) -> Tuple[Presentation, dict]:
    taken = set(base.alphabet.names)
    s_syms: List[GeneratorSymbol] = []
    d_syms: List[GeneratorSymbol] = []
    for i in range(1, k + 1):
        s = GeneratorSymbol(_fresh_name(f"s_{i}", taken))
        taken.add(s.name)
        d = GeneratorSymbol(_fresh_name(f"d_{i}", taken))
        taken.add(d.name)
        s_syms.append(s)
        d_syms.append(d)
    t = GeneratorSymbol(_fresh_name("t", taken))
    ordered: List[GeneratorSymbol] = list(base.alphabet.symbols)
    for s, d in zip(s_syms, d_syms):
        ordered.extend((s, d))
    ordered.append(t)
    alphabet = Alphabet(ordered)

    rels: List[Word] = list(base.relators)
    level_gens: List[GeneratorSymbol] = list(base.alphabet.symbols)
    for i in range(k):
        rels.extend(_mitosis_relators(level_gens, s_syms[i], d_syms[i]))
        level_gens = level_gens + [s_syms[i], d_syms[i]]
    tw = word(t)
    for g in base.alphabet:
        rels.append((~tw) * word(g) * tw * ~word(g))
    for i in range(k - 1):
        rels.append((~tw) * word(s_syms[i]) * tw * ~word(s_syms[i + 1]))
        rels.append((~tw) * word(d_syms[i]) * tw * ~word(d_syms[i + 1]))
    realized = Presentation(alphabet, tuple(rels))
    payload = {"k": k, "s": tuple(s_syms), "d": tuple(d_syms), "t": t}
    return realized, payload


def mu_stage(p: ExprLike, k: int) -> GroupExpr:
    """Stage-k truncation of the boundedly acyclic ascending-HNN hull.

    Generators are S plus s_1, d_1, ..., s_k, d_k, t; relators are the
    mitosis relators of levels 1..k (level i+1 quantified over the whole
    level-i alphabet) plus the HNN relators t^-1 g t = g for g in S and
    t^-1 s_i t = s_{i+1}, t^-1 d_i t = d_{i+1} for i < k.  Stage-monotone
    in k.
    """
    if k < 1:
        raise ValueError("mu stage index must be >= 1")
    pe = _as_expr(p)
    realized, payload = _mu_stage_presentation(pe.realized, k)
    return GroupExpr(MU_STAGE, (pe,), payload, realized)


def mu_staged(p: ExprLike) -> StagedPresentation:
    """Lazy stage -> presentation view of the mu construction."""
    pe = _as_expr(p)
    return StagedPresentation(
        lambda k: _mu_stage_presentation(pe.realized, k)[0], first_stage=1, name="mu-stages"
    )


def mitosis_morphism(phi: PresentationMorphism, m_source: GroupExpr, m_target: GroupExpr) -> PresentationMorphism:
    """Functor action on morphisms: a map of base presentations induces a
    map of their standard mitoses sending the base through phi and the
    fresh letters to the fresh letters.

    Realised for morphisms between finite presentations only; the induced
    morphism starts pending and verifies against any base-relator checker.
    """
    if m_source.kind != MITOSIS or m_target.kind != MITOSIS:
        raise ValueError("mitosis_morphism expects mitosis nodes")
    if m_source.children[0].realized.alphabet != phi.source.alphabet:
        raise ValueError("morphism source does not match the mitosis base")
    if m_target.children[0].realized.alphabet != phi.target.alphabet:
        raise ValueError("morphism target does not match the mitosis base")
    images: Dict[GeneratorSymbol, Word] = dict(phi.images)
    images[m_source.payload["s"]] = word(m_target.payload["s"])
    images[m_source.payload["d"]] = word(m_target.payload["d"])
    return PresentationMorphism(m_source.realized, m_target.realized, images)


def mitosis_tower(p: ExprLike) -> StagedPresentation:
    """Lazy stage k -> the k-fold iterated standard mitosis (stage 0 = p)."""
    pe = _as_expr(p)

    def build(k: int) -> Presentation:
        expr = pe
        for _ in range(k):
            expr = standard_mitosis(expr)
        return expr.realized

    return StagedPresentation(build, first_stage=0, name="mitosis-tower")


def bac_hnn(p: ExprLike, embed: PresentationMorphism) -> GroupExpr:
    """Ascending HNN over a self-embedding, tagged for the inference rule
    that certifies bounded acyclicity from the base's embedding chain."""
    pe = _as_expr(p)
    if embed.source.alphabet != pe.realized.alphabet or embed.target.alphabet != pe.realized.alphabet:
        raise StableLetterError("embedding must be a self-map of the base presentation")
    taken = set(pe.realized.alphabet.names)
    stable = _fresh_name("t", taken)
    return hnn_extension(
        pe, stable, ascending_domain=embed, _extra_payload={"bac_hnn_chain": True}
    )


def canonical_rename(p: Presentation, prefix: str = "g") -> Presentation:
    """Rename generators to prefix1, prefix2, ... preserving order."""
    mapping: Dict[GeneratorSymbol, Word] = {}
    new_syms = []
    for i, sym in enumerate(p.alphabet, start=1):
        new_sym = GeneratorSymbol(f"{prefix}{i}")
        new_syms.append(new_sym)
        mapping[sym] = Word(((new_sym, 1),))
    return Presentation(
        Alphabet(new_syms), tuple(substitute(r, mapping) for r in p.relators), p.name
    )


def canonical_form(p: Presentation, prefix: str = "g") -> Presentation:
    """Canonical renaming plus a deterministic relator order, for comparing
    presentations that agree up to bookkeeping (e.g. associativity of the
    product combinators)."""
    renamed = canonical_rename(p, prefix)

    def key(rel: Word):
        return tuple((renamed.alphabet.index(s), e) for s, e in rel.letters)

    return Presentation(renamed.alphabet, tuple(sorted(renamed.relators, key=key)), p.name)
