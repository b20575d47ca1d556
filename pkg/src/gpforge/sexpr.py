"""S-expression file format for GroupExpr construction trees.

Construction forms:

    (atom "name" :file "p.grp" :facts (amenable (fin-gen 2)))
    (atom "name" :pres "gens a b\\nrel ..." :facts (...))
    (free-product E E)        (direct E E)
    (amalgam E E :pairs (("u" "v") ...))
    (hnn E :stable "t" :assoc (("u" "v") ...) :ascending)
    (mitosis E)               (mu E :k 3)
    (meier-T)                 (meier-gamma)
    (lambda-w E "w")          (gamma-w E "w")
    (witness-w E E "w")       (pi-w E "w" :dim d)    (delta-w E "w" :dim d)

Witness forms take the word-problem source as an atom E and accept an
optional `:oracle "free"` or `:oracle "bs:2,3"` (default free).  Writers
emit inline `:pres` atoms and structural forms carrying the optional tag
keywords (`:kind`, `:nonelementary`, `:edge-amenable`, `:doublecoset-3`,
`:proper-edge`, `:legit-edges`, `:bac-chain`, `:dim`), which readers
restore, so written trees re-derive identically.  Words are quoted in the
word text syntax.
"""

from __future__ import annotations

import os
from typing import Callable, List, Optional, Tuple

from . import combinators as cb
from . import meier as meier_mod
from . import reductions as red
from .errors import ParseError
from .inference import predicate_from_kebab, predicate_to_kebab
from .presentations import Presentation, parse as parse_presentation, serialize
from .words import Word, format_word, parse_word


class Symbol(str):
    """A bare token, distinct from a quoted string."""


def _tokenize(text: str) -> List[object]:
    tokens: List[object] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch in " \t\r\n":
            i += 1
        elif ch == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif ch in "()":
            tokens.append(Symbol(ch))
            i += 1
        elif ch == '"':
            i += 1
            out = []
            while i < n and text[i] != '"':
                if text[i] == "\\" and i + 1 < n:
                    nxt = text[i + 1]
                    out.append({"n": "\n", "t": "\t", '"': '"', "\\": "\\"}.get(nxt, nxt))
                    i += 2
                else:
                    out.append(text[i])
                    i += 1
            if i >= n:
                raise ParseError("unterminated string in expression file")
            tokens.append(out and "".join(out) or "")
            i += 1
        else:
            j = i
            while j < n and text[j] not in ' \t\r\n();"':
                j += 1
            tok = text[i:j]
            try:
                tokens.append(int(tok))
            except ValueError:
                tokens.append(Symbol(tok))
            i = j
    return tokens


def _read(tokens: List[object], pos: int) -> Tuple[object, int]:
    if pos >= len(tokens):
        raise ParseError("unexpected end of expression file")
    tok = tokens[pos]
    if isinstance(tok, Symbol) and tok == "(":
        items = []
        pos += 1
        while True:
            if pos >= len(tokens):
                raise ParseError("missing closing parenthesis")
            if isinstance(tokens[pos], Symbol) and tokens[pos] == ")":
                return items, pos + 1
            item, pos = _read(tokens, pos)
            items.append(item)
    if isinstance(tok, Symbol) and tok == ")":
        raise ParseError("unbalanced closing parenthesis")
    return tok, pos + 1


def _split_args(items: List[object]):
    """Separate positional arguments from :keyword arguments (a keyword
    followed by a non-keyword takes it as value, else acts as a flag)."""
    positional = []
    keywords = {}
    i = 0
    while i < len(items):
        item = items[i]
        if isinstance(item, Symbol) and item.startswith(":"):
            key = item[1:]
            if i + 1 < len(items) and not (
                isinstance(items[i + 1], Symbol) and str(items[i + 1]).startswith(":")
            ):
                keywords[key] = items[i + 1]
                i += 2
            else:
                keywords[key] = True
                i += 1
        else:
            positional.append(item)
            i += 1
    return positional, keywords


def _parse_facts(obj) -> Tuple:
    facts = []
    if obj in (None, True):
        return ()
    for item in obj:
        if isinstance(item, Symbol):
            facts.append((predicate_from_kebab(str(item)), None))
        elif isinstance(item, list) and len(item) == 2 and isinstance(item[0], Symbol):
            facts.append((predicate_from_kebab(str(item[0])), int(item[1])))
        else:
            raise ParseError(f"bad fact form {item!r}")
    return tuple(facts)


def _parse_pairs(obj, left: Presentation, right: Presentation) -> List[Tuple[Word, Word]]:
    pairs = []
    for item in obj or []:
        if not (isinstance(item, list) and len(item) == 2):
            raise ParseError(f"bad identification pair {item!r}")
        u = parse_word(item[0], left.alphabet)
        v = parse_word(item[1], right.alphabet)
        pairs.append((u, v))
    return pairs


def _oracle_source(expr: cb.GroupExpr, oracle: Optional[str]) -> red.WordProblemSource:
    if expr.kind != cb.ATOM:
        raise ParseError("witness constructions need an atom as word-problem source")
    pres = expr.realized
    facts = expr.payload.get("facts", ())
    choice = oracle or "free"
    if choice == "free":
        return red.WordProblemSource(pres, red.ORACLE_FREE, asserted_facts=facts)
    if choice.startswith("bs:"):
        m, n = (int(x) for x in choice[3:].split(","))
        return red.WordProblemSource(pres, red.ORACLE_BS, bs_params=(m, n), asserted_facts=facts)
    raise ParseError(f"unknown oracle {choice!r}")


def build_expr(form, *, loader: Optional[Callable[[str], Presentation]] = None) -> cb.GroupExpr:
    """Evaluate one parsed form to a GroupExpr.

    `loader` resolves `:file` references in atom forms.
    """
    if not isinstance(form, list) or not form or not isinstance(form[0], Symbol):
        raise ParseError(f"expected a construction form, got {form!r}")
    head = str(form[0])
    args, kw = _split_args(form[1:])

    def sub(i):
        return build_expr(args[i], loader=loader)

    if head == "atom":
        if not args or not isinstance(args[0], str):
            raise ParseError("atom needs a name string")
        name = args[0]
        if "pres" in kw:
            pres = parse_presentation(kw["pres"], name=name)
        elif "file" in kw:
            if loader is None:
                raise ParseError("atom :file reference but no loader available")
            pres = loader(kw["file"])
        else:
            raise ParseError(f"atom {name!r} needs :pres or :file")
        return cb.atom(pres, facts=_parse_facts(kw.get("facts")), name=name)
    if head == "free-product":
        left, right = sub(0), sub(1)
        return cb.free_product(
            left,
            right,
            _kind=kw.get("kind", cb.FREE_PRODUCT),
            _extra_payload={"nonelementary": True} if kw.get("nonelementary") else None,
        )
    if head == "direct":
        left, right = sub(0), sub(1)
        extra = {}
        if "dim" in kw:
            extra["dim"] = int(kw["dim"])
        return cb.direct_product(
            left, right, _kind=kw.get("kind", cb.DIRECT_PRODUCT), _extra_payload=extra or None
        )
    if head == "amalgam":
        left, right = sub(0), sub(1)
        pairs = _parse_pairs(kw.get("pairs"), left.realized, right.realized)
        return cb.amalgamated_product(
            left,
            right,
            pairs,
            edge_amenable=bool(kw.get("edge-amenable")),
            doublecoset_at_least_3=bool(kw.get("doublecoset-3")),
            proper_edge=bool(kw.get("proper-edge")),
            edges_legitimate=bool(kw.get("legit-edges")),
            _kind=kw.get("kind", cb.AMALGAM),
        )
    if head == "hnn":
        base = sub(0)
        stable = kw.get("stable")
        if not isinstance(stable, str):
            raise ParseError("hnn needs :stable \"letter\"")
        assoc = []
        for item in kw.get("assoc") or []:
            if not (isinstance(item, list) and len(item) == 2):
                raise ParseError(f"bad assoc pair {item!r}")
            assoc.append(
                (parse_word(item[0], base.realized.alphabet), parse_word(item[1], base.realized.alphabet))
            )
        extra = {}
        if kw.get("bac-chain"):
            extra["bac_hnn_chain"] = True
        node = cb.hnn_extension(base, stable, assoc, _extra_payload=extra or None)
        if kw.get("ascending"):
            node.payload["ascending"] = True
        return node
    if head == "mitosis":
        return cb.standard_mitosis(sub(0))
    if head == "mu":
        if "k" not in kw:
            raise ParseError("mu needs :k stage")
        return cb.mu_stage(sub(0), int(kw["k"]))
    if head == "meier-T":
        return meier_mod.meier_t_expr()
    if head == "meier-gamma":
        return meier_mod.meier_gamma_expr()
    if head in ("lambda-w", "gamma-w", "pi-w", "delta-w"):
        source = sub(0)
        if len(args) < 2 or not isinstance(args[1], str):
            raise ParseError(f"{head} needs a word string")
        src = _oracle_source(source, kw.get("oracle"))
        w = parse_word(args[1], src.presentation.alphabet)
        if head == "lambda-w":
            return red.lambda_w(src, w).expr
        if head == "gamma-w":
            return red.gamma_w(src, w).expr
        if head == "pi-w":
            return red.pi_w(src, w, int(kw.get("dim", 4))).expr
        return red.delta_w(src, w, int(kw.get("dim", 1))).expr
    if head == "witness-w":
        gamma = sub(0)
        source = sub(1)
        if len(args) < 3 or not isinstance(args[2], str):
            raise ParseError("witness-w needs a word string")
        src = _oracle_source(source, kw.get("oracle"))
        w = parse_word(args[2], src.presentation.alphabet)
        return red.witness_w(gamma, src, w).expr
    raise ParseError(f"unknown construction form {head!r}")


def parse_expr(text: str, *, base_dir: Optional[str] = None) -> cb.GroupExpr:
    tokens = _tokenize(text)
    form, pos = _read(tokens, 0)
    if pos != len(tokens):
        raise ParseError("trailing tokens after the construction form")

    def loader(path: str) -> Presentation:
        full = path if base_dir is None else os.path.join(base_dir, path)
        with open(full, "r", encoding="utf-8") as fh:
            return parse_presentation(fh.read(), name=os.path.basename(path))

    return build_expr(form, loader=loader)


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n") + '"'


def _facts_form(facts) -> str:
    parts = []
    for pred, arg in facts:
        kebab = predicate_to_kebab(pred)
        parts.append(kebab if arg is None else f"({kebab} {arg})")
    return "(" + " ".join(parts) + ")"


def serialize_expr(expr: cb.GroupExpr) -> str:
    """Self-contained form (inline presentations) that re-derives
    identically when parsed back."""
    kind = expr.kind
    if kind == cb.ATOM:
        name = expr.payload.get("name") or "atom"
        out = f"(atom {_quote(name)} :pres {_quote(serialize(expr.realized))}"
        facts = expr.payload.get("facts", ())
        if facts:
            out += f" :facts {_facts_form(facts)}"
        return out + ")"
    if kind == cb.MEIER_T:
        return "(meier-T)"
    if kind == cb.MEIER_GAMMA:
        return "(meier-gamma)"
    if kind == cb.MITOSIS:
        return f"(mitosis {serialize_expr(expr.children[0])})"
    if kind == cb.MU_STAGE:
        return f"(mu {serialize_expr(expr.children[0])} :k {expr.payload['k']})"
    if kind == cb.HNN:
        base = expr.children[0]
        pairs = " ".join(
            f"({_quote(format_word(u))} {_quote(format_word(v))})" for u, v in expr.payload["assoc"]
        )
        out = f"(hnn {serialize_expr(base)} :stable {_quote(expr.payload['stable'].name)} :assoc ({pairs})"
        if expr.payload.get("ascending"):
            out += " :ascending"
        if expr.payload.get("bac_hnn_chain"):
            out += " :bac-chain"
        return out + ")"
    if kind in cb.FREE_PRODUCT_LIKE:
        out = f"(free-product {serialize_expr(expr.children[0])} {serialize_expr(expr.children[1])}"
        if kind != cb.FREE_PRODUCT:
            out += f" :kind {kind}"
        if expr.payload.get("nonelementary"):
            out += " :nonelementary"
        return out + ")"
    if kind in cb.DIRECT_PRODUCT_LIKE:
        out = f"(direct {serialize_expr(expr.children[0])} {serialize_expr(expr.children[1])}"
        if kind != cb.DIRECT_PRODUCT:
            out += f" :kind {kind}"
        if "dim" in expr.payload:
            out += f" :dim {expr.payload['dim']}"
        return out + ")"
    if kind in cb.AMALGAM_LIKE:
        pairs = " ".join(
            f"({_quote(format_word(u))} {_quote(format_word(v))})" for u, v in expr.payload["pairs"]
        )
        out = (
            f"(amalgam {serialize_expr(expr.children[0])} {serialize_expr(expr.children[1])} "
            f":pairs ({pairs})"
        )
        if kind != cb.AMALGAM:
            out += f" :kind {kind}"
        for flag, key in (
            ("edge_amenable", "edge-amenable"),
            ("doublecoset_at_least_3", "doublecoset-3"),
            ("proper_edge", "proper-edge"),
            ("edges_legitimate", "legit-edges"),
        ):
            if expr.payload.get(flag):
                out += f" :{key}"
        return out + ")"
    raise ParseError(f"cannot serialize node kind {kind!r}")
