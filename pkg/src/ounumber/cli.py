"""Command-line interface: ``ounumber <subcommand> ...``.

Diagrams travel as PD text; ``-`` reads standard input. With ``--json``
every command prints one JSON object carrying ``"schema": 1``. Exit codes:
0 success, 1 domain or usage error, 2 internal invariant breach.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field

from . import bounds
from .diagram import LinkDiagram, non_self_ou, ou_number, ou_vector
from .errors import BadParams, InternalError, LinkError, ParseError
from .generators import (
    FIXTURE_NAMES,
    braid_closure,
    fixture,
    hhn_word,
    jablonowski_sequences,
    parse_braid,
    random_closure,
    trivial_diagram,
)
from .moves import apply_move, enumerate_moves
from .ousequence import (
    CyclicOUSequence,
    OUSequence,
    parse_word,
    phi_cyclic,
    phi_linear,
    reduce_full,
    reduce_once,
)
from .pdcode import parse_pd, serialize_pd
from .search import Objective, SearchConfig, connect
from .verify import SCALES, SUITES, run_suites

SCHEMA = 1


class UsageError(LinkError):
    code = "USAGE"


@dataclass
class CommandOutcome:
    exit_code: int
    payload: dict | None = None
    text: str = ""
    diagnostics: list[str] = field(default_factory=list)
    json: bool = False


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read(path: str, stdin) -> str:
    if path == "-":
        return stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _diagram(path: str, stdin) -> LinkDiagram:
    return parse_pd(_read(path, stdin))


# -- subcommands ------------------------------------------------------------------


def cmd_ou(args, stdin) -> CommandOutcome:
    d = _diagram(args.file, stdin)
    if args.component is not None:
        f = non_self_ou(d, args.component)
        phi = ou_number(d, args.component)
        return CommandOutcome(
            0, {"component": args.component, "word": str(f), "phi": phi}, f"K{args.component}: f = {f or '∅'}  Φ = {phi}"
        )
    words = [str(non_self_ou(d, i)) for i in range(1, d.r + 1)]
    phi = list(ou_vector(d))
    lines = [f"K{i}: f = {w or '∅'}  Φ = {p}" for i, (w, p) in enumerate(zip(words, phi), 1)]
    lines.append(f"sum Φ = {sum(phi)}")
    return CommandOutcome(0, {"phi": phi, "words": words}, "\n".join(lines))


def _word_result(text: str) -> dict:
    w = parse_word(text)
    if isinstance(w, CyclicOUSequence):
        return {"word": text, "cyclic": True, "phi": str(phi_cyclic(w))}
    return {"word": text, "cyclic": False, "phi": str(phi_linear(w))}


def cmd_phi(args, stdin) -> CommandOutcome:
    results = [_word_result(t) for t in args.words]
    text = "\n".join(f"{r['word'] or '∅'}: {r['phi']}" for r in results)
    return CommandOutcome(0, {"results": results}, text)


def _reduce_linear(s: OUSequence) -> OUSequence:
    while True:
        sites = [i for i in range(1, len(s)) if s[i - 1] is s[i]]
        if not sites:
            return s
        s = reduce_once(s, sites[0])


def cmd_reduce(args, stdin) -> CommandOutcome:
    w = parse_word(args.word)
    if isinstance(w, CyclicOUSequence):
        out = reduce_full(w)
        steps = (len(w) - len(out)) // 2
        phi = str(phi_cyclic(out))
        normal = "~" + str(out)
    else:
        out = _reduce_linear(w)
        steps = (len(w) - len(out)) // 2
        phi = str(phi_linear(out))
        normal = str(out)
    payload = {"word": args.word, "reduced": normal, "deletions": steps, "phi": phi}
    return CommandOutcome(0, payload, f"{normal or '∅'}  (Φ = {phi}, {steps} deletions)")


def _phi_literal(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")
    except ValueError:
        raise ParseError(f"bad Φ vector {text!r}") from None


def _bound_inputs(args, stdin):
    if args.family == "dnk":
        if args.n is None or args.k is None:
            raise BadParams("--family dnk needs --n and --k")
        if 2 * args.n <= args.k:
            raise BadParams("the D_(n,k) bound needs 2n > k")
        return jablonowski_sequences(args.n, args.k), (0, 0)
    if args.family == "hhn":
        if args.n is None:
            raise BadParams("--family hhn needs --n")
        return braid_closure(hhn_word(args.n)), trivial_diagram(2)
    if args.phi is not None or args.phi2 is not None:
        if args.phi is None or args.phi2 is None:
            raise UsageError("give both --phi and --phi2")
        return _phi_literal(args.phi), _phi_literal(args.phi2)
    if len(args.files) != 2:
        raise UsageError("give two diagram files, --phi/--phi2, or --family")
    if args.files == ["-", "-"]:
        raise UsageError("at most one input may come from stdin")
    return _diagram(args.files[0], stdin), _diagram(args.files[1], stdin)


def cmd_bound(args, stdin) -> CommandOutcome:
    a, b = _bound_inputs(args, stdin)
    caveat = {"caveat": bounds.CAVEAT}
    if args.ordered:
        v = bounds.lower_bound_ordered(a, b)
        return CommandOutcome(0, {"bound": v, **caveat}, f"ordered bound: {v}  ({bounds.CAVEAT})")
    if args.unordered:
        v = bounds.lower_bound_unordered(a, b)
        return CommandOutcome(0, {"bound": v, **caveat}, f"unordered bound: {v}  ({bounds.CAVEAT})")
    if args.per_component is not None:
        j = args.per_component
        v = bounds.per_component_bound(a, b, j)
        return CommandOutcome(
            0,
            {"bound": v, "component": j, "attribution": "middle segment", **caveat},
            f"at least {v} RIIIα moves with middle segment on K{j}  ({bounds.CAVEAT})",
        )
    if args.multiset:
        v = bounds.multiset_obstruction(a, b)
        pa, pb = bounds.phi_of(a), bounds.phi_of(b)
        return CommandOutcome(
            0,
            {"obstruction": v, "phi_vectors": [list(pa), list(pb)], **caveat},
            f"multiset obstruction: {v}  ({sorted(pa)} vs {sorted(pb)})",
        )
    if args.parity:
        v = bounds.parity_constraint(a, b)
        return CommandOutcome(0, {"parity": v.value, **caveat}, f"parity constraint: {v.value}")
    report = bounds.bound_report(a, b)
    d = report.to_dict()
    lines = [f"{k}: {v}" for k, v in d.items()]
    return CommandOutcome(0, d, "\n".join(lines))


def _listing(args, d: LinkDiagram):
    return enumerate_moves(d, args.increasing, args.max_crossings)


def cmd_moves(args, stdin) -> CommandOutcome:
    d = _diagram(args.file, stdin)
    sites = _listing(args, d)
    rows = [{"id": i, **s.describe()} for i, s in enumerate(sites)]
    lines = []
    for row in rows:
        extra = ""
        if "alpha" in row:
            extra = f" {'alpha' if row['alpha'] else 'non-alpha'} roles={row['roles']}"
        lines.append(f"{row['id']:4d} {row['kind']} {row['location']}{extra}")
    return CommandOutcome(0, {"sites": rows}, "\n".join(lines) or "(no moves)")


def cmd_apply(args, stdin) -> CommandOutcome:
    d = _diagram(args.file, stdin)
    sites = _listing(args, d)
    if not 0 <= args.site < len(sites):
        raise BadParams(f"site id {args.site} out of range 0..{len(sites) - 1}")
    out = apply_move(d, sites[args.site])
    text = serialize_pd(out)
    return CommandOutcome(0, {"pd": text, "phi": list(ou_vector(out))}, text.rstrip("\n"))


def cmd_generate(args, stdin) -> CommandOutcome:
    if args.fixture is not None:
        d = fixture(args.fixture)
        if isinstance(d, tuple):
            d = d[args.index - 1]
    elif args.family == "hhn":
        if args.n is None:
            raise BadParams("--family hhn needs --n")
        d = braid_closure(hhn_word(args.n))
    elif args.family == "dnk":
        if args.n is None or args.k is None:
            raise BadParams("--family dnk needs --n and --k")
        f1, f2 = jablonowski_sequences(args.n, args.k)
        payload = {"f1": str(f1), "f2": str(f2), "phi": [phi_cyclic(f1), phi_cyclic(f2)]}
        return CommandOutcome(0, payload, f"~{f1}\n~{f2}")
    elif args.family == "trivial":
        d = trivial_diagram(args.r if args.r is not None else 1)
    elif args.family == "braid":
        if args.word is None:
            raise BadParams("--family braid needs --word")
        d = braid_closure(parse_braid(args.word, args.strands))
    elif args.family == "random":
        d = random_closure(random.Random(args.seed), max_crossings=args.max_crossings)
    else:
        raise UsageError("give --family or --fixture")
    text = serialize_pd(d)
    return CommandOutcome(0, {"pd": text, "phi": list(ou_vector(d))}, text.rstrip("\n"))


def cmd_search(args, stdin) -> CommandOutcome:
    if args.source == "-" and args.target == "-":
        raise UsageError("at most one input may come from stdin")
    a, b = _diagram(args.source, stdin), _diagram(args.target, stdin)
    cfg = SearchConfig(
        max_crossings=args.max_crossings,
        max_states=args.max_states,
        allow_increasing=not args.no_increasing,
        objective=Objective(args.objective),
        use_heuristic=not args.no_heuristic,
    )
    res = connect(a, b, cfg)
    lines = [f"status: {res.status.value}", f"lower bound: {res.lower_bound}"]
    if res.found:
        lines += res.sequence.log_lines()
        lines.append(f"counts: {res.sequence.counts()}")
        lines.append(f"optimal certified: {res.optimal_certified}")
    else:
        lines.append("(not a proof that no sequence exists)")
    return CommandOutcome(0, res.to_dict(), "\n".join(lines))


def cmd_verify(args, stdin) -> CommandOutcome:
    results = run_suites(args.scale, args.seed or 0, args.suite)
    ok = all(r.passed for r in results)
    lines = [
        f"{'PASS' if r.passed else 'FAIL'} {r.name} ({r.checked} checked){' ' + r.detail if r.detail else ''}"
        for r in results
    ]
    return CommandOutcome(
        0 if ok else 1, {"passed": ok, "suites": [r.to_dict() for r in results]}, "\n".join(lines)
    )


# -- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)

    p = _Parser(prog="ounumber", description="OU sequences and RIIIα bounds for link diagrams.")
    p.add_argument("--json", action="store_true", help="emit one JSON object")
    p.add_argument("--seed", type=int, default=None, help="seed for randomized commands")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    q = sub.add_parser("ou", parents=[common], help="non-self OU sequences and Φ of a diagram")
    g = q.add_mutually_exclusive_group()
    g.add_argument("--component", type=int)
    g.add_argument("--all", action="store_true")
    q.add_argument("file")
    q.set_defaults(func=cmd_ou)

    q = sub.add_parser("phi", parents=[common], help="Φ of bare words (~ marks cyclic)")
    q.add_argument("words", nargs="+")
    q.set_defaults(func=cmd_phi)

    q = sub.add_parser("reduce", parents=[common], help="delete OO/UU pairs until none remain")
    q.add_argument("word")
    q.set_defaults(func=cmd_reduce)

    q = sub.add_parser("bound", parents=[common], help="lower bounds on RIIIα moves")
    g = q.add_mutually_exclusive_group()
    g.add_argument("--ordered", action="store_true")
    g.add_argument("--unordered", action="store_true")
    g.add_argument("--per-component", type=int, metavar="J")
    g.add_argument("--multiset", action="store_true")
    g.add_argument("--parity", action="store_true")
    q.add_argument("--phi")
    q.add_argument("--phi2")
    q.add_argument("--family", choices=["dnk", "hhn"], help="compare a family member with the trivial diagram")
    q.add_argument("--n", type=int)
    q.add_argument("--k", type=int)
    q.add_argument("files", nargs="*")
    q.set_defaults(func=cmd_bound)

    for name, func, text in (
        ("moves", cmd_moves, "list applicable move sites"),
        ("apply", cmd_apply, "apply a listed move site"),
    ):
        q = sub.add_parser(name, parents=[common], help=text)
        q.add_argument("file")
        q.add_argument("--increasing", action="store_true", help="also list RI/RII additions")
        q.add_argument("--max-crossings", type=int)
        if name == "apply":
            q.add_argument("--site", type=int, required=True)
        q.set_defaults(func=func)

    q = sub.add_parser("generate", parents=[common], help="build a diagram family member or fixture")
    g = q.add_mutually_exclusive_group()
    g.add_argument("--family", choices=["hhn", "dnk", "trivial", "braid", "random"])
    g.add_argument("--fixture", choices=FIXTURE_NAMES)
    q.add_argument("--index", type=int, choices=[1, 2], default=1, help="member of a fixture pair")
    q.add_argument("--n", type=int)
    q.add_argument("--k", type=int)
    q.add_argument("--r", type=int)
    q.add_argument("--word")
    q.add_argument("--strands", type=int)
    q.add_argument("--max-crossings", type=int, default=10)
    q.set_defaults(func=cmd_generate)

    q = sub.add_parser("search", parents=[common], help="find a move sequence between two diagrams")
    q.add_argument("source")
    q.add_argument("target")
    q.add_argument("--max-crossings", type=int, default=8)
    q.add_argument("--max-states", type=int, default=100_000)
    q.add_argument("--objective", choices=["alpha", "total"], default="alpha")
    q.add_argument("--no-heuristic", action="store_true")
    q.add_argument("--no-increasing", action="store_true")
    q.set_defaults(func=cmd_search)

    q = sub.add_parser("verify", parents=[common], help="run the invariant suites")
    q.add_argument("--scale", choices=list(SCALES), default="small")
    q.add_argument("--suite", action="append", choices=list(SUITES))
    q.set_defaults(func=cmd_verify)
    return p


def run(argv: list[str], stdin=None) -> CommandOutcome:
    stdin = stdin if stdin is not None else sys.stdin
    try:
        args = build_parser().parse_args(argv)
        out = args.func(args, stdin)
    except LinkError as exc:
        return CommandOutcome(1, {"error": {"code": exc.code, "message": str(exc)}},
                              diagnostics=[f"error [{exc.code}]: {exc}"])
    except InternalError as exc:
        return CommandOutcome(2, {"error": {"code": exc.code, "message": str(exc)}},
                              diagnostics=[f"internal error: {exc}"])
    except Exception as exc:  # anything else is a bug, not bad input
        return CommandOutcome(2, {"error": {"code": "INTERNAL", "message": repr(exc)}},
                              diagnostics=[f"internal error: {exc!r}"])
    out.payload = {"schema": SCHEMA, **(out.payload or {})}
    out.json = args.json
    return out


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    out = run(argv)
    for line in out.diagnostics:
        print(line, file=sys.stderr)
    # errors are raised before the flag is parsed, so look at argv directly
    if out.json or (out.exit_code and "--json" in argv):
        payload = {"schema": SCHEMA, **(out.payload or {})}
        print(json.dumps(payload, ensure_ascii=False))
    elif out.text:
        print(out.text)
    return out.exit_code


if __name__ == "__main__":
    sys.exit(main())
