"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 input error, 3 internal invariant
violation.  `-` means stdin/stdout for every FILE position.  Randomised
corpus commands are fully determined by --seed (overridden by the
GPFORGE_SEED environment variable).
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from typing import List, Optional

from . import combinators as cb
from . import meier as meier_mod
from . import reductions as red
from .errors import GpforgeError, InternalError, InvalidComplexError, ParseError
from .homology import abelianization
from .inference import (
    check_consistency,
    derive,
    predicate_from_kebab,
    query,
)
from .presentations import Presentation, parse, serialize, tietze_simplify
from .rewriting import bs_reduce, finite_quotient_search, permutation_cycles
from .sexpr import parse_expr, serialize_expr
from .topology import serialize_simplicial, triangulate
from .words import format_word, parse_word

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}")


def _write_text(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")


def _load_presentation(path: str) -> Presentation:
    return parse(_read_text(path), name=os.path.basename(path) if path != "-" else None)


def _load_expr(path: str):
    base_dir = None if path == "-" else os.path.dirname(os.path.abspath(path))
    return parse_expr(_read_text(path), base_dir=base_dir)


def _cmd_abelianize(args) -> int:
    group = abelianization(_load_presentation(args.file))
    torsion = ",".join(str(t) for t in group.torsion)
    print(f"rank={group.rank} torsion=[{torsion}]")
    return EXIT_OK


def _cmd_normalize(args) -> int:
    try:
        m, n = (int(x) for x in args.bs.split(","))
    except ValueError:
        raise UsageError("--bs expects m,n")
    w = parse_word(args.word)
    print(format_word(bs_reduce(m, n, w)))
    return EXIT_OK


def _cmd_certify_nontrivial(args) -> int:
    p = _load_presentation(args.file)
    target = parse_word(args.word, p.alphabet)
    cert = finite_quotient_search(p, args.degree, target=target)
    if cert is None:
        print("not found within bound")
        return EXIT_OK
    if not cert.revalidate():
        raise InternalError("finite-quotient certificate failed re-validation")
    parts = [
        f"{sym.name}: {permutation_cycles(perm)}"
        for sym, perm in sorted(cert.hom.images.items(), key=lambda kv: p.alphabet.index(kv[0]))
    ]
    print("hom " + " ".join(parts))
    return EXIT_OK


def _cmd_triangulate(args) -> int:
    p = _load_presentation(args.file)
    _write_text(args.output, serialize_simplicial(triangulate(p)))
    return EXIT_OK


def _cmd_build(args) -> int:
    expr = _load_expr(args.file)
    _write_text(args.output, serialize(expr.realized))
    return EXIT_OK


def _parse_query(text: str):
    parts = text.split()
    if not parts:
        raise UsageError("empty query")
    predicate = predicate_from_kebab(parts[0])
    degree = int(parts[1]) if len(parts) > 1 else None
    return predicate, degree


def _cmd_infer(args) -> int:
    expr = _load_expr(args.file)
    predicate, degree = _parse_query(args.query)
    derivation = derive(expr, max_degree=max(args.max_degree, degree or 0))
    cert = query(derivation, expr, predicate, degree)
    if cert is None:
        print("NOT DERIVABLE")
        return EXIT_OK
    print(f"DERIVED via {cert.rule}")
    if args.cert:
        print(cert.render())
    contradictions = check_consistency(derivation)
    for node, message in contradictions:
        print(f"CONTRADICTION at n{node}: {message}", file=sys.stderr)
    return EXIT_OK


def _oracle_from_flag(choice: str, pres: Presentation) -> red.WordProblemSource:
    if choice == "free":
        return red.WordProblemSource(pres, red.ORACLE_FREE, asserted_facts=(("TorsionFree", None),))
    if choice.startswith("bs:"):
        try:
            m, n = (int(x) for x in choice[3:].split(","))
        except ValueError:
            raise UsageError("--oracle bs expects bs:m,n")
        return red.WordProblemSource(
            pres, red.ORACLE_BS, bs_params=(m, n), asserted_facts=(("TorsionFree", None),)
        )
    raise UsageError(f"unknown oracle {choice!r}")


def _cmd_reduce(args) -> int:
    lam = _load_presentation(args.lam)
    src = _oracle_from_flag(args.oracle, lam)
    w = parse_word(args.word, lam.alphabet)
    construction = args.construction
    if construction == "lambda":
        out = red.lambda_w(src, w)
    elif construction == "gamma":
        out = red.gamma_w(src, w)
    elif construction == "witness-w":
        gamma = red.f2_atom() if args.gamma is None else cb.atom(
            _load_presentation(args.gamma),
            facts=(("TorsionFree", None),),
        )
        out = red.witness_w(gamma, src, w)
    elif construction == "pi":
        out = red.pi_w(src, w, args.dim)
    elif construction == "delta":
        out = red.delta_w(src, w, args.dim)
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown construction {construction!r}")
    _write_text(args.output, serialize(out.presentation))
    if args.expr_output:
        _write_text(args.expr_output, serialize_expr(out.expr))
    return EXIT_OK


def _cmd_meier_probe(args) -> int:
    for w, status in meier_mod.double_coset_probe(args.max_len, args.budget):
        print(f"{format_word(w)}\t{status}")
    return EXIT_OK


def _corpus_emit(label: str, body: str) -> None:
    print(f"## {label}")
    print(body)
    print()


def _cmd_corpus(args) -> int:
    seed = int(os.environ.get("GPFORGE_SEED", args.seed))
    rng = random.Random(seed)
    family = args.family
    if family == "mu":
        from .presentations import presentation

        base = presentation(["g"], name="F1")
        for k in range(1, args.depth + 1):
            stage = cb.mu_stage(base, k)
            _corpus_emit(f"mu stage {k}", serialize(stage.realized))
            _corpus_emit(
                f"mu stage {k} simplified", serialize(tietze_simplify(stage.realized))
            )
    elif family == "witness":
        src = red.free_source()
        alphabet = src.presentation.alphabet
        letters = [(s, 1) for s in alphabet.symbols] + [(s, -1) for s in alphabet.symbols]
        for i in range(args.count):
            length = rng.randint(1, 12)
            w = parse_word("1")
            from .words import Word

            picks = [letters[rng.randrange(len(letters))] for _ in range(length)]
            w = Word(picks)
            out = red.gamma_w(src, w)
            label = "trivial" if out.trivial_branch else "nontrivial"
            _corpus_emit(
                f"witness {i} word={format_word(w) if w else '1'} branch={label}",
                serialize(out.presentation),
            )
    elif family == "meier":
        data = meier_mod.build_meier()
        _corpus_emit("BS(2,3)", serialize(data.B))
        _corpus_emit("Meier amalgam T", serialize(data.T))
        _corpus_emit("Meier amalgam T simplified", serialize(tietze_simplify(data.T)))
    elif family == "large":
        gamma = meier_mod.meier_gamma_expr()
        _corpus_emit("meier-gamma expression", serialize_expr(gamma))
        thompson = cb.atom(
            parse("gens p q", name="thompson-t-stand-in"),
            facts=(("ThompsonT", None),),
            name="thompson-t-stand-in",
        )
        hyp = red.hyperbolic_manifold_atom(3)
        product = cb.direct_product(thompson, hyp)
        _corpus_emit("thompson-times-hyperbolic expression", serialize_expr(product))
    else:  # pragma: no cover
        raise UsageError(f"unknown family {family!r}")
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="gpforge", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("abelianize", help="rank and torsion of a presentation's abelianization")
    p.add_argument("file")
    p.set_defaults(func=_cmd_abelianize)

    p = sub.add_parser("normalize", help="Britton canonical form in BS(m,n)")
    p.add_argument("--bs", required=True, metavar="m,n")
    p.add_argument("word")
    p.set_defaults(func=_cmd_normalize)

    p = sub.add_parser("certify-nontrivial", help="finite-quotient nontriviality certificate")
    p.add_argument("file")
    p.add_argument("--word", required=True)
    p.add_argument("--degree", type=int, default=5)
    p.set_defaults(func=_cmd_certify_nontrivial)

    p = sub.add_parser("triangulate", help="double barycentric subdivision of the presentation complex")
    p.add_argument("file")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_triangulate)

    p = sub.add_parser("build", help="evaluate a GroupExpr file to a presentation")
    p.add_argument("file")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("infer", help="derive a property certificate for an expression")
    p.add_argument("file")
    p.add_argument("--query", required=True, help='e.g. "large-hb 4" or "boundedly-acyclic"')
    p.add_argument("--cert", action="store_true")
    p.add_argument("--max-degree", type=int, default=12)
    p.set_defaults(func=_cmd_infer)

    p = sub.add_parser("reduce", help="witness constructions from a word-problem instance")
    p.add_argument("--construction", required=True, choices=["lambda", "gamma", "witness-w", "pi", "delta"])
    p.add_argument("--lambda", dest="lam", required=True, metavar="FILE")
    p.add_argument("--oracle", default="free", metavar="{free|bs:m,n}")
    p.add_argument("--word", required=True)
    p.add_argument("--dim", type=int, default=4)
    p.add_argument("--gamma", default=None, metavar="FILE")
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--expr", dest="expr_output", default=None)
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("meier-probe", help="double-coset witness probe for Meier's amalgam")
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--budget", type=int, required=True)
    p.set_defaults(func=_cmd_meier_probe)

    p = sub.add_parser("corpus", help="emit labeled example families")
    p.add_argument("--family", required=True, choices=["mu", "witness", "meier", "large"])
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_corpus)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InternalError, InvalidComplexError) as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except GpforgeError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
