"""Executable law suites shared by the test suite and the ``laws`` command.

Each suite enumerates a finite slice of the type language and checks the
defining laws of the preorder, the saturation oracle, normal forms, filters,
the functional-type predicate, and the derivation search.  Results are plain
data so callers can render them as text or JSON.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import lru_cache

from .assign import SearchBudget, Verdict, check_derivation, derives
from .classify import fun_predicate, _tri_or
from .filters import (
    FiniteFilter,
    apply,
    filter_leq,
    member,
    phi_membership,
    prop_simple_check,
    up,
)
from .subtype import (
    _universe_atoms,
    canonical,
    canonical_types,
    check_proof,
    enumerate_types,
    eq,
    leq,
    leq_trace,
    oracle_relation,
)
from .syntax import (
    App,
    Arrow,
    Atom,
    Inter,
    Lam,
    NU,
    OMEGA,
    Var,
    print_type,
)
from .theory import Rule, TheorySpec


@dataclass
class LawResult:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "checked": self.checked,
            "ok": self.ok,
            "failures": [repr(f) for f in self.failures[:20]],
        }


@lru_cache(maxsize=8)
def _universe(spec: TheorySpec, atoms: frozenset, size: int):
    """All types of bounded size over the atoms plus the theory's constants,
    with the full leq matrix as integer bitmask rows."""
    types = enumerate_types(_universe_atoms(spec, atoms), size)
    index = {t: i for i, t in enumerate(types)}
    rows = [0] * len(types)
    for i, a in enumerate(types):
        acc = 0
        for j, b in enumerate(types):
            if leq(spec, a, b):
                acc |= 1 << j
        rows[i] = acc
    return types, index, rows


def preorder_laws(spec: TheorySpec, atoms, size: int) -> list[LawResult]:
    types, index, rows = _universe(spec, frozenset(atoms), size)
    n = len(types)

    refl = LawResult("refl")
    for i in range(n):
        refl.checked += 1
        if not (rows[i] >> i) & 1:
            refl.failures.append(print_type(types[i]))

    trans = LawResult("trans")
    for i in range(n):
        rest = rows[i]
        while rest:
            j = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            trans.checked += 1
            if rows[j] & ~rows[i]:
                trans.failures.append((print_type(types[i]), print_type(types[j])))
    out = [refl, trans]

    idem = LawResult("idem")
    for t in types:
        idem.checked += 1
        if not leq(spec, t, Inter(t, t)):
            idem.failures.append(print_type(t))
    out.append(idem)

    incl = LawResult("incl")
    inters = [(i, t) for i, t in enumerate(types) if isinstance(t, Inter)]
    for i, t in inters:
        incl.checked += 1
        if not ((rows[i] >> index[t.left]) & 1 and (rows[i] >> index[t.right]) & 1):
            incl.failures.append(print_type(t))
    out.append(incl)

    mon = LawResult("mon")
    for (i, t), (j, u) in itertools.product(inters, inters):
        li, ri = index[t.left], index[t.right]
        if (rows[li] >> index[u.left]) & 1 and (rows[ri] >> index[u.right]) & 1:
            mon.checked += 1
            if not (rows[i] >> j) & 1:
                mon.failures.append((print_type(t), print_type(u)))
    out.append(mon)

    arrows = [(i, t) for i, t in enumerate(types) if isinstance(t, Arrow)]
    if Rule.ETA in spec.rules:
        eta = LawResult("eta")
        for (i, t), (j, u) in itertools.product(arrows, arrows):
            if (
                (rows[index[u.dom]] >> index[t.dom]) & 1
                and (rows[index[t.cod]] >> index[u.cod]) & 1
            ):
                eta.checked += 1
                if not (rows[i] >> j) & 1:
                    eta.failures.append((print_type(t), print_type(u)))
        out.append(eta)

    if Rule.ARROW_INTER in spec.rules:
        ai = LawResult("arrow-inter")
        for _, t in arrows:
            for _, u in arrows:
                if t.dom == u.dom:
                    ai.checked += 1
                    lhs = Inter(t, u)
                    rhs = Arrow(t.dom, Inter(t.cod, u.cod))
                    if not leq(spec, lhs, rhs):
                        ai.failures.append((print_type(lhs), print_type(rhs)))
        out.append(ai)
    return out


def oracle_agreement_law(spec: TheorySpec, atoms, size: int) -> LawResult:
    """Every subtyping the saturation oracle finds must be confirmed by leq."""
    types, index, rows = _universe(spec, frozenset(atoms), size)
    oindex, osucc = oracle_relation(spec, atoms, size)
    by_index = [None] * len(oindex)
    for t, i in oindex.items():
        by_index[i] = t
    res = LawResult("oracle-agreement")
    for t, i in oindex.items():
        rest = osucc[i]
        while rest:
            j = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            res.checked += 1
            u = by_index[j]
            if not (rows[index[t]] >> index[u]) & 1:
                res.failures.append((print_type(t), print_type(u)))
    return res


def trace_soundness_law(spec: TheorySpec, atoms, size: int) -> LawResult:
    """Every positive leq answer carries a trace the checker accepts."""
    types, index, rows = _universe(spec, frozenset(atoms), size)
    res = LawResult("trace-soundness")
    for i, a in enumerate(types):
        rest = rows[i]
        while rest:
            j = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            res.checked += 1
            p = leq_trace(spec, a, types[j])
            if p is None or p.lhs != a or p.rhs != types[j] or not check_proof(spec, p):
                res.failures.append((print_type(a), print_type(types[j])))
    return res


def normal_form_laws(spec: TheorySpec, atoms, size: int) -> LawResult:
    """canonical is idempotent and preserves equivalence."""
    types, _, _ = _universe(spec, frozenset(atoms), size)
    res = LawResult("normal-form")
    for t in types:
        res.checked += 1
        ct = canonical(spec, t)
        if canonical(spec, ct) != ct or not eq(spec, t, ct):
            res.failures.append(print_type(t))
    return res


def filter_laws(spec: TheorySpec, atoms, size: int) -> list[LawResult]:
    gens = canonical_types(spec, _universe_atoms(spec, frozenset(atoms)), size)
    small = canonical_types(spec, _universe_atoms(spec, frozenset(atoms)), min(size, 3))

    upward = LawResult("filter-upward-closure")
    intersect = LawResult("filter-inter-closure")
    for g in gens:
        x = FiniteFilter(g)
        for a in small:
            if not member(spec, x, a):
                continue
            for b in small:
                if leq(spec, a, b):
                    upward.checked += 1
                    if not member(spec, x, b):
                        upward.failures.append((print_type(g), print_type(b)))
                if member(spec, x, b):
                    intersect.checked += 1
                    if not member(spec, x, Inter(a, b)):
                        intersect.failures.append(
                            (print_type(g), print_type(a), print_type(b))
                        )

    simple = LawResult("prop-simple")
    oo = Arrow(Atom(OMEGA), Atom(OMEGA))
    for g in gens:
        x = FiniteFilter(g)
        if spec.has_omega and not member(spec, x, oo):
            continue
        for a, b in itertools.product(small, small):
            simple.checked += 1
            if not prop_simple_check(spec, x, a, b):
                simple.failures.append((print_type(g), print_type(a), print_type(b)))

    mono = LawResult("apply-monotone")
    args = [up(t) for t in small] + [up()]
    for g1, g2 in itertools.product(small, small):
        x1, x2 = up(g1), up(g2)
        if not filter_leq(spec, x1, x2):
            continue
        for y in args:
            mono.checked += 1
            if not filter_leq(spec, apply(spec, x1, y), apply(spec, x2, y)):
                mono.failures.append((print_type(g1), print_type(g2)))
    return [upward, intersect, simple, mono]


def fun_recursion_law(spec: TheorySpec, atoms, size: int) -> LawResult:
    """fun(A & B) is the three-valued disjunction of fun(A) and fun(B)."""
    types = canonical_types(spec, _universe_atoms(spec, frozenset(atoms)), size)
    res = LawResult("fun-recursion")
    for a, b in itertools.product(types, types):
        res.checked += 1
        got = fun_predicate(spec, Inter(a, b))
        want = _tri_or(fun_predicate(spec, a), fun_predicate(spec, b))
        if got is not want:
            res.failures.append((print_type(a), print_type(b)))
    return res


def fun_phi_law(spec: TheorySpec, atoms, size: int) -> LawResult:
    """A principal filter over a functional type lies in the functionality set."""
    types = canonical_types(spec, _universe_atoms(spec, frozenset(atoms)), size)
    res = LawResult("fun-implies-phi")
    for a in types:
        if fun_predicate(spec, a) is not Verdict.YES:
            continue
        res.checked += 1
        if not phi_membership(spec, FiniteFilter(a)):
            res.failures.append(print_type(a))
    return res


def _random_term(rng: random.Random, depth: int):
    names = ("x", "y", "z")
    if depth == 0:
        return Var(rng.choice(names))
    match rng.randrange(3):
        case 0:
            return Var(rng.choice(names))
        case 1:
            return Lam(rng.choice(names), _random_term(rng, depth - 1))
        case _:
            return App(_random_term(rng, depth - 1), _random_term(rng, depth - 1))


def random_judgments(spec: TheorySpec, atoms, seed: int, count: int, budget=None):
    """Seeded stream of Yes-judgments found by the search; used as corpora."""
    budget = budget or SearchBudget(max_candidate_type_size=4, max_depth=16)
    rng = random.Random(seed)
    pool = canonical_types(spec, _universe_atoms(spec, frozenset(atoms)), 4)
    out = []
    attempts = 0
    while len(out) < count and attempts < count * 60:
        attempts += 1
        m = _random_term(rng, rng.randrange(1, 4))
        ctx = {v: rng.choice(pool) for v in ("x", "y", "z") if rng.random() < 0.7}
        a = rng.choice(pool)
        v, d = derives(spec, ctx, m, a, budget)
        if v is Verdict.YES:
            out.append((ctx, m, a, d))
    return out


def search_soundness_law(
    spec: TheorySpec, atoms, size: int, seed: int, samples: int = 25
) -> LawResult:
    """Every Yes from the search comes with a derivation the checker accepts,
    and Yes survives a budget increase."""
    res = LawResult("search-soundness")
    big = SearchBudget(max_candidate_type_size=5, max_depth=32)
    for ctx, m, a, d in random_judgments(spec, atoms, seed, samples):
        res.checked += 1
        if d is None or not check_derivation(spec, d):
            res.failures.append((str(m), print_type(a), "bad-derivation"))
            continue
        v2, _ = derives(spec, ctx, m, a, big)
        if v2 is not Verdict.YES:
            res.failures.append((str(m), print_type(a), "budget-flip"))
    return res


def run_all(spec: TheorySpec, atoms, size: int, seed: int) -> list[LawResult]:
    results = []
    results += preorder_laws(spec, atoms, size)
    results.append(oracle_agreement_law(spec, atoms, min(size, 4)))
    results.append(trace_soundness_law(spec, atoms, min(size, 4)))
    results.append(normal_form_laws(spec, atoms, size))
    results += filter_laws(spec, atoms, size)
    results.append(fun_recursion_law(spec, atoms, min(size, 4)))
    results.append(fun_phi_law(spec, atoms, size))
    results.append(search_soundness_law(spec, atoms, size, seed))
    return results
