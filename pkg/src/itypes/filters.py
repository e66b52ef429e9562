"""Finitely generated filters of types and the filter applicative structure.

Every representable filter is principal: a finite generating set collapses to
the intersection of its members, so a filter is either the upward closure of a
single generator or the closure of the empty set (which is the whole of
``up(omega)`` when omega is a constant, and empty otherwise).
"""

from __future__ import annotations

from dataclasses import dataclass

from .assign import SearchBudget, Verdict, derives
from .errors import EmptyEnvFilter
from .subtype import _arrow_heads, canonical, leq
from .syntax import (
    Arrow,
    Atom,
    NU,
    OMEGA,
    Term,
    Type,
    free_vars,
    inter_of,
    parse_type,
    print_type,
)
from .theory import Rule, TheorySpec


@dataclass(frozen=True)
class FiniteFilter:
    """Upward closure of ``generator``; ``None`` encodes the closure of the
    empty set."""

    generator: Type | None = None

    @property
    def is_empty_generated(self) -> bool:
        return self.generator is None


def up(*generators: Type) -> FiniteFilter:
    """The filter generated by a finite set of types."""
    if not generators:
        return FiniteFilter(None)
    return FiniteFilter(inter_of(list(generators)))


def member(spec: TheorySpec, x: FiniteFilter, a: Type) -> bool:
    if x.generator is None:
        return spec.has_omega and leq(spec, Atom(OMEGA), a)
    return leq(spec, x.generator, a)


def filter_leq(spec: TheorySpec, x: FiniteFilter, y: FiniteFilter) -> bool:
    """Subset order on filters: every member of x is a member of y."""
    if x.generator is None:
        return True if not spec.has_omega else member(spec, y, Atom(OMEGA))
    return member(spec, y, x.generator)


def apply(spec: TheorySpec, x: FiniteFilter, y: FiniteFilter) -> FiniteFilter:
    """Filter application: the filter of all B with A -> B in x for some A in y."""
    gen = x.generator
    if gen is None:
        if not spec.has_omega:
            return FiniteFilter(None)
        gen = Atom(OMEGA)
    cods = [
        h.arrow.cod
        for h in _arrow_heads(spec, gen)
        if member(spec, y, h.arrow.dom)
    ]
    if not cods:
        return FiniteFilter(None)
    return FiniteFilter(canonical(spec, inter_of(cods)))


def prop_simple_check(spec: TheorySpec, x: FiniteFilter, a: Type, b: Type) -> bool:
    """b in x . up(a) iff a -> b in x; expected to hold whenever omega -> omega
    is in x (or unconditionally in omega-free theories)."""
    lhs = member(spec, apply(spec, x, up(a)), b)
    rhs = member(spec, x, Arrow(a, b))
    return lhs == rhs


def make_abstraction_filter(spec: TheorySpec, table) -> FiniteFilter:
    """The filter of a finite step function: all arrows A -> B from the table,
    together with nu when present (every abstraction has type nu)."""
    parts: list[Type] = [Arrow(a, b) for a, b in table]
    if spec.has_nu:
        parts.append(Atom(NU))
    if not parts:
        if Rule.OMEGA_ETA in spec.rules:
            return FiniteFilter(Arrow(Atom(OMEGA), Atom(OMEGA)))
        return FiniteFilter(None)
    return FiniteFilter(canonical(spec, inter_of(parts)))


def phi_membership(spec: TheorySpec, x: FiniteFilter) -> bool:
    """Membership in the functionality set: the filters that behave like
    functions under application."""
    if spec.has_omega:
        return member(spec, x, Arrow(Atom(OMEGA), Atom(OMEGA)))
    if spec.has_nu:
        return member(spec, x, Atom(NU))
    return True


def interpret_member(
    spec: TheorySpec,
    m: Term,
    env: dict[str, FiniteFilter],
    a: Type,
    budget: SearchBudget = SearchBudget(),
) -> Verdict:
    """Whether a belongs to the interpretation of m in the filter structure
    under env; equivalently, whether the generator basis derives m : a."""
    ctx: dict[str, Type] = {}
    for x in sorted(free_vars(m)):
        f = env.get(x, FiniteFilter(None))
        if f.generator is not None:
            ctx[x] = f.generator
        elif spec.has_omega:
            ctx[x] = Atom(OMEGA)
        else:
            raise EmptyEnvFilter(f"variable {x!r} is bound to the empty filter")
    v, _ = derives(spec, ctx, m, a, budget)
    return v


def filter_to_json(spec: TheorySpec, x: FiniteFilter) -> str:
    if x.generator is None:
        return "empty"
    return print_type(canonical(spec, x.generator))


def filter_from_json(data: str, spec: TheorySpec | None = None) -> FiniteFilter:
    if data == "empty":
        return FiniteFilter(None)
    return FiniteFilter(parse_type(data, spec))
