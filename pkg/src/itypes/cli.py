"""Command line front end.

Exit codes: 0 for yes/true, 1 for no/false, 2 for errors, 3 for unknown.
The distinction between 1 and 3 matters: 1 is a refutation, 3 only means the
search budget ran out.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .assign import (
    SearchBudget,
    Verdict,
    derivation_to_json,
    derives,
)
from .classify import adequacy_report
from .errors import ItypesError
from .filters import FiniteFilter, interpret_member
from .laws import run_all
from .subtype import leq_trace, proof_to_json
from .syntax import parse_term, parse_type, print_type
from .theory import NamedTheory, load_spec, named_theory
from . import laws as _laws  # noqa: F401  (re-exported suites for scripting)

_VERDICT_EXIT = {Verdict.YES: 0, Verdict.NO: 1, Verdict.UNKNOWN: 3}


def _resolve_theory(name: str, extra_atoms: int):
    if name.startswith("file:"):
        path = name[5:]
        if not os.path.exists(path):
            search = os.environ.get("ITYPES_THEORY_PATH")
            if search:
                for d in search.split(os.pathsep):
                    cand = os.path.join(d, path)
                    if os.path.exists(cand):
                        path = cand
                        break
        return load_spec(path)
    return named_theory(NamedTheory(name.lower()), extra_atoms)


def _parse_ctx(spec, text: str):
    ctx = {}
    for entry in filter(None, (e.strip() for e in text.split(","))):
        if ":" not in entry:
            raise ItypesError(f"bad context entry {entry!r}, expected var:type")
        x, t = entry.split(":", 1)
        ctx[x.strip()] = parse_type(t, spec)
    return ctx


def _parse_env(spec, text: str):
    env = {}
    for entry in filter(None, (e.strip() for e in text.split(","))):
        if "=" not in entry:
            raise ItypesError(f"bad env entry {entry!r}, expected var=type")
        x, t = entry.split("=", 1)
        env[x.strip()] = FiniteFilter(parse_type(t, spec))
    return env


def _emit(args, text_line: str, payload: dict):
    if args.output == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(text_line)


def _cmd_leq(args, spec, budget) -> int:
    a = parse_type(args.lhs, spec)
    b = parse_type(args.rhs, spec)
    trace = leq_trace(spec, a, b)
    ok = trace is not None
    payload = {"result": ok}
    if ok:
        payload["trace"] = proof_to_json(trace)
    _emit(args, "true" if ok else "false", payload)
    return 0 if ok else 1


def _cmd_check(args, spec, budget) -> int:
    ctx = _parse_ctx(spec, args.ctx)
    m = parse_term(args.term)
    a = parse_type(args.type, spec)
    v, d = derives(spec, ctx, m, a, budget)
    payload = {"verdict": v.value}
    if d is not None:
        payload["derivation"] = derivation_to_json(d)
    _emit(args, v.value, payload)
    return _VERDICT_EXIT[v]


def _cmd_infer(args, spec, budget) -> int:
    from .assign import infer_types

    ctx = _parse_ctx(spec, args.ctx)
    m = parse_term(args.term)
    found = sorted(
        infer_types(spec, ctx, m, args.size, spec.atoms, budget),
        key=print_type,
    )
    lines = [print_type(t) for t in found]
    _emit(args, "\n".join(lines), {"types": lines})
    return 0


def _cmd_interp(args, spec, budget) -> int:
    env = _parse_env(spec, args.env)
    m = parse_term(args.term)
    a = parse_type(args.type, spec)
    v = interpret_member(spec, m, env, a, budget)
    _emit(args, v.value, {"verdict": v.value})
    return _VERDICT_EXIT[v]


def _cmd_classify(args, spec, budget) -> int:
    report = adequacy_report(spec)
    payload = report.to_json()
    lines = [f"{k}: {v}" for k, v in payload.items() if k != "notes"]
    lines += [f"note: {n}" for n in report.notes]
    _emit(args, "\n".join(lines), payload)
    return 0


def _cmd_laws(args, spec, budget) -> int:
    plain = sorted(a for a in spec.atoms if a not in ("omega", "nu"))
    atoms = frozenset(plain[:2])
    results = run_all(spec, atoms, args.size, args.seed)
    failed = [r for r in results if not r.ok]
    lines = [
        f"{r.name}: {'ok' if r.ok else 'FAIL'} ({r.checked} checked)"
        for r in results
    ]
    _emit(args, "\n".join(lines), {"results": [r.to_json() for r in results]})
    return 0 if not failed else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--theory", default="bcd", help="ba|ehr|ao|bcd or file:PATH")
    common.add_argument("--atoms", type=int, default=3, help="fresh atom count")
    common.add_argument("--budget-size", type=int, default=6)
    common.add_argument("--budget-depth", type=int, default=64)
    common.add_argument("--output", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(
        prog="itypes",
        description="Intersection-type theories: subtyping, typing, filters.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def sub_parser(name, help):
        return sub.add_parser(name, help=help, parents=[common])

    p = sub_parser("leq", "decide a subtyping judgment")
    p.add_argument("lhs")
    p.add_argument("rhs")
    p.set_defaults(func=_cmd_leq)

    p = sub_parser("check", "search for a typing derivation")
    p.add_argument("ctx", help="comma-separated var:type entries (may be empty)")
    p.add_argument("term")
    p.add_argument("type")
    p.set_defaults(func=_cmd_check)

    p = sub_parser("infer", "enumerate derivable types up to a size")
    p.add_argument("ctx")
    p.add_argument("term")
    p.add_argument("--size", type=int, default=4)
    p.set_defaults(func=_cmd_infer)

    p = sub_parser("interp", "filter-structure interpretation membership")
    p.add_argument("env", help="comma-separated var=type entries (may be empty)")
    p.add_argument("term")
    p.add_argument("type")
    p.set_defaults(func=_cmd_interp)

    p = sub_parser("classify", "adequacy report for the theory")
    p.set_defaults(func=_cmd_classify)

    p = sub_parser("laws", "run the property-law suites")
    p.add_argument("--size", type=int, default=4)
    p.set_defaults(func=_cmd_laws)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = _resolve_theory(args.theory, args.atoms)
        budget = SearchBudget(args.budget_size, args.budget_depth)
        return args.func(args, spec, budget)
    except (ItypesError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
