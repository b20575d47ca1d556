"""Finite and staged group presentations.

File grammar (UTF-8, LF on output):

    file      := line*
    line      := comment | gens | rel | blank
    comment   := '#' <any chars> EOL
    gens      := 'gens' (WS ident)* EOL        # at most one per file
    rel       := 'rel' WS word (WS '=' WS word)? EOL

`rel u = v` is sugar for the relator u * v^-1.  Words use the syntax from
gpforge.words.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .errors import AlphabetMismatchError, ParseError
from .words import (
    Alphabet,
    GeneratorSymbol,
    Word,
    cyclically_reduce,
    format_word,
    parse_word,
    substitute,
)


@dataclass(frozen=True)
class Presentation:
    """An alphabet plus an ordered list of relators."""

    alphabet: Alphabet
    relators: Tuple[Word, ...]
    name: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "relators", tuple(self.relators))

    @property
    def generators(self) -> Tuple[GeneratorSymbol, ...]:
        return self.alphabet.symbols

    def generator_count(self) -> int:
        return len(self.alphabet)

    def relator_count(self) -> int:
        return len(self.relators)

    def __repr__(self):
        nm = f" name={self.name!r}" if self.name else ""
        return f"<Presentation{nm} gens={list(self.alphabet.names)} rels={len(self.relators)}>"


def presentation(gens: Sequence[str], relator_texts: Sequence[str] = (), name: Optional[str] = None) -> Presentation:
    """Build a presentation from generator names and relator word texts."""
    alphabet = Alphabet(gens)
    rels = tuple(parse_word(t, alphabet) for t in relator_texts)
    return Presentation(alphabet, rels, name)


EMPTY_PRESENTATION = Presentation(Alphabet(()), ())


def parse(text: str, name: Optional[str] = None) -> Presentation:
    """Parse the presentation file grammar; errors carry line numbers."""
    alphabet: Optional[Alphabet] = None
    pending_rels: List[Tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        keyword, _, rest = line.partition(" ")
        if keyword == "gens":
            if alphabet is not None:
                raise ParseError("more than one 'gens' line", line=lineno)
            try:
                alphabet = Alphabet(rest.split())
            except ParseError as exc:
                raise ParseError(str(exc), line=lineno) from None
        elif keyword == "rel":
            if not rest.strip():
                raise ParseError("empty 'rel' line", line=lineno)
            pending_rels.append((lineno, rest.strip()))
        else:
            raise ParseError(f"unknown directive {keyword!r}", line=lineno)
    if alphabet is None:
        alphabet = Alphabet(())
    relators = []
    for lineno, rel_text in pending_rels:
        try:
            if " = " in rel_text:
                left_text, right_text = rel_text.split(" = ", 1)
                left = parse_word(left_text, alphabet, line=lineno)
                right = parse_word(right_text, alphabet, line=lineno)
                relators.append(left * ~right)
            else:
                relators.append(parse_word(rel_text, alphabet, line=lineno))
        except AlphabetMismatchError as exc:
            raise ParseError(f"relator uses undeclared generator: {exc}", line=lineno) from None
    return Presentation(alphabet, tuple(relators), name)


def serialize(p: Presentation) -> str:
    """Canonical text: one `gens` line, one `rel` line per stored relator."""
    lines = ["gens" + "".join(" " + n for n in p.alphabet.names)]
    for rel in p.relators:
        lines.append("rel " + format_word(rel))
    return "\n".join(lines)


def validate(p: Presentation) -> List[str]:
    """Diagnostics for violations of the Presentation invariants.

    Words are freely reduced by construction, so the reduction invariant
    shows up here as trivial (empty) relators; symbol scope is checked
    against the ambient alphabet.
    """
    out: List[str] = []
    for i, rel in enumerate(p.relators):
        for sym, _ in rel.letters:
            if sym not in p.alphabet:
                out.append(f"relator {i} uses undeclared generator {sym.name!r}")
        if not rel:
            out.append(f"relator {i} freely reduces to 1 (normalization)")
    return out


def _isolated_symbol(rel: Word, sym: GeneratorSymbol) -> Optional[Word]:
    """If `rel` isolates `sym` (one occurrence, exponent +-1), return the
    word u with sym = u implied by rel; otherwise None."""
    occ = [e for s, e in rel.letters if s == sym]
    if len(occ) != 1 or abs(occ[0]) != 1:
        return None
    r = rel if occ[0] == 1 else ~rel
    j = next(k for k, (s, _) in enumerate(r.letters) if s == sym)
    # r rotated at j reads sym * tail, so sym = tail^-1; the slice seam may
    # merge two runs of one symbol, which Word() normalises.
    tail = Word(r.letters[j + 1 :] + r.letters[:j])
    return ~tail


def tietze_simplify(p: Presentation, budget: int = 10_000) -> Presentation:
    """Greedy deterministic Tietze simplification.

    Moves, each costing one budget step:
      * deletion of a relator that freely/cyclically reduces to 1,
      * elimination of a generator isolated by some relator (single
        occurrence with exponent +-1), substituting its solved value
        everywhere and dropping the defining relator.

    Relator-by-relator free and cyclic reduction is applied as free
    normalisation throughout.  Generators are scanned in reverse alphabet
    order, so eliminations keep the earliest-declared generators alive;
    within one generator, relators are scanned in stored order.  Stops at
    a fixpoint or after `budget` moves, whichever comes first.
    """
    if budget < 0:
        raise ValueError("budget must be >= 0")
    symbols = list(p.alphabet.symbols)
    relators = [cyclically_reduce(r)[0] for r in p.relators]
    steps = 0
    while steps < budget:
        idx = next((i for i, r in enumerate(relators) if not r), None)
        if idx is not None:
            del relators[idx]
            steps += 1
            continue
        chosen = None
        for sym in reversed(symbols):
            for i, rel in enumerate(relators):
                value = _isolated_symbol(rel, sym)
                if value is not None:
                    chosen = (sym, i, value)
                    break
            if chosen is not None:
                break
        if chosen is None:
            break
        sym, i, value = chosen
        mapping = {s: Word(((s, 1),)) for s in symbols if s != sym}
        mapping[sym] = value
        relators = [
            cyclically_reduce(substitute(r, mapping))[0]
            for j, r in enumerate(relators)
            if j != i
        ]
        symbols.remove(sym)
        steps += 1
    return Presentation(Alphabet(symbols), tuple(relators), p.name)


@dataclass(frozen=True)
class PresentationMorphism:
    """A map of presentations given by images of the source generators.

    A morphism starts out pending; `verify` certifies it by checking that
    every source relator's image is trivial in the target, using a caller
    supplied triviality decision (free reduction, Britton rewriting, ...).
    """

    source: Presentation
    target: Presentation
    images: Dict[GeneratorSymbol, Word]
    verified: bool = field(default=False, compare=False)

    def __post_init__(self):
        for sym in self.source.alphabet:
            if sym not in self.images:
                raise ParseError(f"morphism missing image for generator {sym.name!r}")
        for img in self.images.values():
            self.target.alphabet.check_word(img)

    @property
    def pending(self) -> bool:
        return not self.verified

    def apply(self, w: Word) -> Word:
        self.source.alphabet.check_word(w)
        return substitute(w, self.images)

    def verify(self, is_trivial_in_target: Callable[[Word], bool]) -> "PresentationMorphism":
        """Return a verified copy if every relator image is certified trivial."""
        for rel in self.source.relators:
            if not is_trivial_in_target(self.apply(rel)):
                raise ParseError(
                    f"morphism does not kill relator {format_word(rel)!r}"
                )
        return PresentationMorphism(self.source, self.target, self.images, verified=True)


class StagedPresentation:
    """A monotone stage -> Presentation family, materialised lazily.

    Stages are memoised behind a lock so concurrent callers may request
    stages freely.
    """

    def __init__(self, builder: Callable[[int], Presentation], *, first_stage: int = 0, name: Optional[str] = None):
        self._builder = builder
        self._cache: Dict[int, Presentation] = {}
        self._lock = threading.Lock()
        self.first_stage = first_stage
        self.name = name

    def stage(self, k: int) -> Presentation:
        if k < self.first_stage:
            raise ValueError(f"stage must be >= {self.first_stage}")
        with self._lock:
            if k not in self._cache:
                self._cache[k] = self._builder(k)
            return self._cache[k]

    def materialized(self) -> Dict[int, Presentation]:
        with self._lock:
            return dict(self._cache)


def is_stage_embedding(p: Presentation, q: Presentation) -> bool:
    """True when p's alphabet and relator list embed order-preservingly in q's."""

    def subsequence(small, big):
        it = iter(big)
        return all(any(x == y for y in it) for x in small)

    return subsequence(p.alphabet.symbols, q.alphabet.symbols) and subsequence(
        p.relators, q.relators
    )
