"""Witness constructions reducing triviality-style questions to a word
problem: w -> Lambda_w, Gamma_w, W(Gamma, Lambda, w), Pi_w, Delta_w.

Each construction emits both a Presentation and a GroupExpr for the
inference engine.  The default backend is oracle-gated: the word-problem
source carries a sound decision procedure (free-group reduction or
Britton rewriting for BS(m,n)), and the published contract is satisfied
branch by branch:

  * w trivial     -> the witness presentation is (Tietze-)trivial and the
                     expression collapses to an atom carrying the facts the
                     collapsed group actually has;
  * w nontrivial  -> a fresh free-product letter wbar of infinite order is
                     returned and the expression records the structural
                     tags the inference rules consume.

An oracle-free backend implementing a published relator schema can be
plugged in behind the same WordProblemSource contract.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple

from .combinators import (
    DELTA_W,
    DIRECT_PRODUCT,
    GAMMA_W,
    GroupExpr,
    LAMBDA_W,
    PI_W,
    WITNESS_W,
    amalgamated_product,
    atom,
    direct_product,
    free_product,
)
from .errors import ConfigurationError, InternalError
from .presentations import EMPTY_PRESENTATION, Presentation, presentation
from .rewriting import bs_reduce, free_triviality
from .words import Word, word

ORACLE_FREE = "free"
ORACLE_BS = "bs"
ORACLE_EXTERNAL = "external"


@dataclass(frozen=True)
class WordProblemSource:
    """A presentation together with a sound triviality decision for it."""

    presentation: Presentation
    kind: str = ORACLE_FREE
    bs_params: Optional[Tuple[int, int]] = None
    external: Optional[Callable[[Word], bool]] = None
    asserted_facts: Tuple = ()

    def is_trivial(self, w: Word) -> bool:
        self.presentation.alphabet.check_word(w)
        if self.kind == ORACLE_FREE:
            return free_triviality(w)
        if self.kind == ORACLE_BS:
            m, n = self.bs_params
            return not bs_reduce(m, n, w)
        if self.kind == ORACLE_EXTERNAL:
            if self.external is None:
                raise ConfigurationError("external oracle requires a decision procedure")
            return self.external(w)
        raise ConfigurationError(f"unknown oracle kind {self.kind!r}")


def free_source(gens: Sequence[str] = ("a", "b"), facts: Tuple = (("TorsionFree", None),)) -> WordProblemSource:
    return WordProblemSource(presentation(gens, (), name="free-source"), ORACLE_FREE, asserted_facts=facts)


def bs_source(m: int = 2, n: int = 3) -> WordProblemSource:
    p = presentation(["a", "t"], [f"t^-1 a^{m} t a^-{n}"], name=f"BS({m},{n})")
    return WordProblemSource(p, ORACLE_BS, bs_params=(m, n), asserted_facts=(("TorsionFree", None),))


@dataclass(frozen=True)
class WitnessOutput:
    """presentation + expression + the infinite-order witness word, present
    exactly when the oracle decided w != 1."""

    presentation: Presentation
    expr: GroupExpr
    wbar: Optional[Word] = None

    @property
    def trivial_branch(self) -> bool:
        return self.wbar is None


def _trivial_atom(name: str) -> GroupExpr:
    return atom(
        EMPTY_PRESENTATION,
        facts=(("Finite", None), ("Amenable", None)),
        name=name,
    )


def _z_atom(gen: str = "z") -> GroupExpr:
    return atom(
        presentation([gen], (), name="Z"),
        facts=(("Amenable", None), ("TorsionFree", None)),
        name="Z",
    )


def lambda_w(src: WordProblemSource, w: Word) -> WitnessOutput:
    """Triviality witness: trivial group iff w = 1 in the source, else the
    free product with Z whose fresh letter has infinite order."""
    if src.is_trivial(w):
        return WitnessOutput(EMPTY_PRESENTATION, _trivial_atom("lambda-w-collapsed"))
    base = atom(src.presentation, facts=src.asserted_facts, name=src.presentation.name)
    expr = free_product(base, _z_atom(), _kind=LAMBDA_W)
    z_sym = expr.realized.alphabet.symbols[-1]
    return WitnessOutput(expr.realized, expr, wbar=word(z_sym))


def gamma_w(src: WordProblemSource, w: Word) -> WitnessOutput:
    """Free product of the triviality witness with Z.

    Trivial branch: the whole expression collapses to a Z atom (amenable).
    Nontrivial branch: a nonelementary free product, tagged so the engine
    derives acylindrical hyperbolicity.
    """
    lw = lambda_w(src, w)
    if lw.trivial_branch:
        z = _z_atom("t")
        return WitnessOutput(z.realized, z)
    expr = free_product(
        lw.expr,
        _z_atom("t"),
        _kind=GAMMA_W,
        _extra_payload={"nonelementary": True},
    )
    return WitnessOutput(expr.realized, expr, wbar=lw.wbar)


def witness_w(gamma: GroupExpr, src: WordProblemSource, w: Word) -> WitnessOutput:
    """The k-fold push-out killing gamma's generators against wbar copies.

    gamma's distinguished generators S' are all of its generators; the
    caller asserts their nontriviality and gamma's torsion-freeness on the
    atom.  k = |S'| copies of the triviality witness are adjoined with one
    identification s'_j = wbar_j each.  When w = 1 the result is
    Tietze-trivial because every generator of gamma is killed.
    """
    k = len(gamma.realized.alphabet)
    if src.is_trivial(w):
        # Lambda_w is the empty presentation and wbar is empty, so the
        # identifications kill the distinguished generators outright.
        relators = list(gamma.realized.relators)
        relators.extend(word(s) for s in gamma.realized.alphabet)
        pres = Presentation(gamma.realized.alphabet, tuple(relators), name="witness-w")
        expr = atom(
            pres,
            facts=(("Finite", None), ("Amenable", None)),
            name="witness-w-collapsed",
        )
        return WitnessOutput(pres, expr)

    lw = lambda_w(src, w)
    if lw.wbar is None:
        raise InternalError("nontrivial branch without a witness word")
    expr: GroupExpr = gamma
    first_wbar: Optional[Word] = None
    for s in gamma.realized.alphabet.symbols:
        expr = amalgamated_product(
            expr,
            lw.expr,
            pairs=((word(s), lw.wbar),),
            edge_amenable=True,
            proper_edge=True,
            edges_legitimate=True,
            _kind=WITNESS_W,
        )
        if first_wbar is None:
            renaming = expr.payload["right_renaming"]
            first_wbar = renaming[lw.wbar.letters[0][0]]
    return WitnessOutput(expr.realized, expr, wbar=first_wbar)


def _require_fact(node: GroupExpr, predicate: str, arg) -> None:
    for pred, a in node.payload.get("facts", ()):
        if pred == predicate and a == arg:
            return
    raise ConfigurationError(
        f"expected atom asserting {predicate}({arg}); assert it explicitly on the input"
    )


def genus2_presentation() -> Presentation:
    return presentation(
        ["a", "b", "c", "d"],
        ["a^-1 b^-1 a b c^-1 d^-1 c d"],
        name="genus-2-surface",
    )


def hyperbolic_manifold_atom(n: int) -> GroupExpr:
    """An atom asserting the closed-hyperbolic-n-manifold-group fact.

    For n = 2 the presentation is the honest genus-2 surface group.  For
    n >= 3 closed hyperbolic manifolds exist but no small presentation is
    bundled, so a named two-generator stand-in presentation carries the
    assertion; the fact, as always for atoms, is the caller's
    responsibility and the inference engine treats it as an assumption.
    """
    if n < 2:
        raise ValueError("hyperbolic manifold dimension must be >= 2")
    facts = (("HypManifoldGroup", n), ("TorsionFree", None), ("FinPres", None))
    if n == 2:
        return atom(genus2_presentation(), facts=facts, name="genus-2-surface-group")
    p = presentation(["x", "y"], (), name=f"hyp{n}-manifold-stand-in")
    return atom(p, facts=facts, name=f"hyp{n}-manifold-stand-in")


def f2_atom(gens: Tuple[str, str] = ("x_1", "x_2")) -> GroupExpr:
    return atom(
        presentation(list(gens), (), name="F2"),
        facts=(("TorsionFree", None), ("AcylHyp", None)),
        name="F2",
    )


def pi_w(src: WordProblemSource, w: Word, d: int, hyp_group: Optional[GroupExpr] = None) -> WitnessOutput:
    """Product of two push-out witnesses whose l1-Betti numbers multiply
    into degree d: one over F2 (degree 2), one over a hyperbolic
    (d-2)-manifold group (degree d-2)."""
    if d < 4:
        raise ValueError("pi_w needs degree d >= 4")
    if hyp_group is None:
        hyp_group = hyperbolic_manifold_atom(d - 2)
    _require_fact(hyp_group, "HypManifoldGroup", d - 2)
    if src.is_trivial(w):
        return WitnessOutput(EMPTY_PRESENTATION, _trivial_atom("pi-w-collapsed"))
    w1 = witness_w(f2_atom(), src, w)
    w2 = witness_w(hyp_group, src, w)
    expr = direct_product(w1.expr, w2.expr, _kind=PI_W, _extra_payload={"dim": d})
    return WitnessOutput(expr.realized, expr, wbar=w1.wbar)


def delta_w(src: WordProblemSource, w: Word, d: int) -> WitnessOutput:
    """Gamma_w times d-1 copies of F2; facts only, no numeric invariants.

    d = 1 returns Gamma_w itself.
    """
    if d < 1:
        raise ValueError("delta_w needs degree d >= 1")
    gw = gamma_w(src, w)
    if d == 1:
        return gw
    expr = gw.expr
    for i in range(d - 1):
        last = i == d - 2
        expr = direct_product(
            expr,
            f2_atom(),
            _kind=DELTA_W if last else DIRECT_PRODUCT,
            _extra_payload={"dim": d} if last else None,
        )
    return WitnessOutput(expr.realized, expr, wbar=gw.wbar)
