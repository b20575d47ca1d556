"""Free-group word algebra over named generator alphabets.

Words are stored in run-length form: a sequence of (symbol, exponent) pairs
with nonzero arbitrary-precision exponents and distinct adjacent symbols.
A word in this form is automatically freely reduced, so the constructor
normalises and every operation returns reduced words.

Text syntax (used by every file format and by the CLI):

    word    := '1' | atom (WS atom)*
    atom    := ident ('^' integer)?
    ident   := [A-Za-z][A-Za-z0-9_]*
    integer := '-'? [1-9][0-9]*

`1` denotes the empty word, e.g. ``t^-1 a^2 t a^-3``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, Optional, Tuple

from .errors import AlphabetMismatchError, ParseError, PartialMapError

_IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
_INTEGER_RE = re.compile(r"-?[1-9][0-9]*\Z")


@dataclass(frozen=True, order=True)
class GeneratorSymbol:
    """A named generator; symbols compare and hash by name."""

    name: str

    def __post_init__(self):
        if not _IDENT_RE.match(self.name):
            raise ParseError(f"invalid generator name {self.name!r}")

    def __repr__(self):
        return f"GeneratorSymbol({self.name!r})"


class Alphabet:
    """An ordered list of distinct generator symbols.

    Order is significant: it fixes matrix column order in homology and
    the canonical `gens` line in serialized presentations.
    """

    def __init__(self, symbols: Iterable[GeneratorSymbol | str]):
        syms = tuple(
            s if isinstance(s, GeneratorSymbol) else GeneratorSymbol(s) for s in symbols
        )
        names = [s.name for s in syms]
        if len(set(names)) != len(names):
            dup = sorted({n for n in names if names.count(n) > 1})
            raise ParseError(f"duplicate generator name(s): {', '.join(dup)}")
        self._symbols = syms
        self._by_name = {s.name: s for s in syms}
        self._index = {s: i for i, s in enumerate(syms)}

    @property
    def symbols(self) -> Tuple[GeneratorSymbol, ...]:
        return self._symbols

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(s.name for s in self._symbols)

    def __len__(self):
        return len(self._symbols)

    def __iter__(self) -> Iterator[GeneratorSymbol]:
        return iter(self._symbols)

    def __contains__(self, symbol) -> bool:
        if isinstance(symbol, str):
            return symbol in self._by_name
        return symbol in self._index

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self._symbols == other._symbols

    def __hash__(self):
        return hash(self._symbols)

    def __repr__(self):
        return f"Alphabet({list(self.names)!r})"

    def symbol(self, name: str) -> GeneratorSymbol:
        try:
            return self._by_name[name]
        except KeyError:
            raise AlphabetMismatchError(f"no generator named {name!r} in alphabet") from None

    def index(self, symbol: GeneratorSymbol) -> int:
        try:
            return self._index[symbol]
        except KeyError:
            raise AlphabetMismatchError(f"{symbol.name!r} not in alphabet") from None

    def check_word(self, word: "Word") -> None:
        for sym, _ in word.letters:
            if sym not in self._index:
                raise AlphabetMismatchError(f"symbol {sym.name!r} not in alphabet")


def _normalize(letters: Iterable[Tuple[GeneratorSymbol, int]]) -> Tuple[Tuple[GeneratorSymbol, int], ...]:
    # Stack pass: merge adjacent runs of the same symbol, drop zero exponents.
    # In run-length form this is exactly free reduction (cascades included).
    stack: list[list] = []
    for sym, exp in letters:
        if not isinstance(exp, int):
            raise TypeError(f"exponent must be int, got {type(exp).__name__}")
        if exp == 0:
            continue
        if stack and stack[-1][0] == sym:
            stack[-1][1] += exp
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([sym, exp])
    return tuple((s, e) for s, e in stack)


class Word:
    """A freely reduced word; immutable and hashable.

    Exponents are plain Python ints, so iterated constructions can grow
    them without overflow.
    """

    __slots__ = ("_letters",)

    def __init__(self, letters: Iterable[Tuple[GeneratorSymbol, int]] = ()):
        object.__setattr__(self, "_letters", _normalize(letters))

    @property
    def letters(self) -> Tuple[Tuple[GeneratorSymbol, int], ...]:
        return self._letters

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    def __len__(self):
        """Word length: sum of |exponent| over all runs."""
        return sum(abs(e) for _, e in self._letters)

    def __bool__(self):
        return bool(self._letters)

    def __eq__(self, other):
        return isinstance(other, Word) and self._letters == other._letters

    def __hash__(self):
        return hash(self._letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self._letters + other._letters)

    def __invert__(self) -> "Word":
        return Word(tuple((s, -e) for s, e in reversed(self._letters)))

    def inverse(self) -> "Word":
        return ~self

    def __pow__(self, k: int) -> "Word":
        if k == 0 or not self._letters:
            return Word()
        if k < 0:
            return (~self) ** (-k)
        if len(self._letters) == 1:
            sym, exp = self._letters[0]
            return Word(((sym, exp * k),))
        return Word(self._letters * k)

    def symbols(self):
        """The set of symbols occurring in the word."""
        return {s for s, _ in self._letters}

    def exponent_sum(self, symbol: GeneratorSymbol) -> int:
        return sum(e for s, e in self._letters if s == symbol)

    def occurrences(self, symbol: GeneratorSymbol):
        """List of exponents of the runs of `symbol`, in order."""
        return [e for s, e in self._letters if s == symbol]

    def single_letters(self) -> Iterator[Tuple[GeneratorSymbol, int]]:
        """Flatten to +-1 letters (avoid on words with huge exponents)."""
        for sym, exp in self._letters:
            step = 1 if exp > 0 else -1
            for _ in range(abs(exp)):
                yield sym, step

    def __repr__(self):
        return f"Word({format_word(self)!r})"

    def __str__(self):
        return format_word(self)


def word(*letters) -> Word:
    """Convenience constructor: word(("a", 2), "t", ("a", -3)) etc."""
    out = []
    for item in letters:
        if isinstance(item, str):
            out.append((GeneratorSymbol(item), 1))
        elif isinstance(item, GeneratorSymbol):
            out.append((item, 1))
        else:
            sym, exp = item
            if isinstance(sym, str):
                sym = GeneratorSymbol(sym)
            out.append((sym, exp))
    return Word(out)


def free_reduce(w: Word, alphabet: Optional[Alphabet] = None) -> Word:
    """The unique freely reduced run-length form of `w`.

    Words are kept reduced by construction, so this re-normalises (a no-op)
    and optionally checks alphabet membership.
    """
    if alphabet is not None:
        alphabet.check_word(w)
    return Word(w.letters)


def cyclically_reduce(w: Word) -> Tuple[Word, Word]:
    """Return (core, conjugator) with w = conjugator * core * conjugator^-1.

    The core is cyclically reduced; peeling works on run-length entries so
    huge exponents never get flattened.
    """
    letters = [list(p) for p in w.letters]
    conj: list = []
    while len(letters) >= 2:
        (s0, e0), (s1, e1) = letters[0], letters[-1]
        if s0 != s1 or (e0 > 0) == (e1 > 0):
            break
        m = min(abs(e0), abs(e1))
        sign = 1 if e0 > 0 else -1
        conj.append((s0, sign * m))
        letters[0][1] -= sign * m
        letters[-1][1] += sign * m
        if letters[-1][1] == 0:
            letters.pop()
        if letters[0][1] == 0:
            letters.pop(0)
        # Freely reduced input: first/last cannot merge into a new run here,
        # but a fully peeled pair may expose another cancellable pair.
    core = Word(tuple((s, e) for s, e in letters))
    return core, Word(conj)


def substitute(w: Word, mapping: Dict[GeneratorSymbol, Word]) -> Word:
    """Homomorphic image of `w` under symbol -> word, freely reduced."""
    parts: list = []
    for sym, exp in w.letters:
        try:
            image = mapping[sym]
        except KeyError:
            raise PartialMapError(f"substitution map has no image for {sym.name!r}") from None
        parts.extend((image ** exp).letters)
    return Word(parts)


def identity_map(alphabet: Alphabet) -> Dict[GeneratorSymbol, Word]:
    return {s: Word(((s, 1),)) for s in alphabet}


def commutator(u: Word, v: Word) -> Word:
    """[u, v] = u^-1 v^-1 u v."""
    return (~u) * (~v) * u * v


def parse_word(text: str, alphabet: Optional[Alphabet] = None, *, line: Optional[int] = None) -> Word:
    """Parse the word text syntax; `1` is the empty word.

    When an alphabet is supplied, identifiers must name its generators.
    """
    text = text.strip()
    if text == "1":
        return Word()
    if not text:
        raise ParseError("empty word text (use '1' for the identity)", line=line)
    letters = []
    col = 1
    for token in text.split():
        ident, caret, expstr = token.partition("^")
        if not _IDENT_RE.match(ident):
            raise ParseError(f"bad word atom {token!r}", line=line, column=col)
        if caret:
            if not _INTEGER_RE.match(expstr):
                raise ParseError(f"bad exponent in atom {token!r}", line=line, column=col)
            exp = int(expstr)
        else:
            exp = 1
        if alphabet is not None:
            sym = alphabet.symbol(ident)
        else:
            sym = GeneratorSymbol(ident)
        letters.append((sym, exp))
        col += len(token) + 1
    return Word(letters)


def format_word(w: Word) -> str:
    """Serialize to the word text syntax; inverse of parse_word."""
    if not w.letters:
        return "1"
    atoms = []
    for sym, exp in w.letters:
        atoms.append(sym.name if exp == 1 else f"{sym.name}^{exp}")
    return " ".join(atoms)
